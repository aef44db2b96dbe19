//! Dyck-path counts and the rational functions `f_d`, `g_d` they expand.
//!
//! `Δ(n, h)` counts Dyck paths of semilength `n` staying within height `h`;
//! `Δˢ(n, h)` counts those that are also symmetric about their midpoint.
//! They are the power-series coefficients of
//! `f_d(x) = U_{d−1}(x)/(x·U_d(x))` and `g_d(x) = 2·Σ_{k<d} U_k(x)/U_d(x)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::chebyshev::{eval, ChebKind};
use crate::error::{domain, resource, usage, Error, Result};
use crate::numeric::{BigFloat, ExactRational};
use crate::sqrt::RootValue;

/// Largest semilength accepted by the enumerators.
pub const ENUMERATION_LIMIT: u64 = 12;

/// Default bound on `n` and `h` for the shared table.
pub const DEFAULT_TABLE_CAP: usize = 64;

/// Memoized `Δ(n, h)` and `Δˢ(n, h)` for `0 ≤ n, h ≤ cap` (and `Δˢ(−1, h) = 1`).
#[derive(Debug, Clone)]
pub struct DyckTable {
    cap: usize,
    delta: Vec<Vec<BigUint>>,
    /// Row `i` holds `Δˢ(i − 1, ·)`.
    delta_s: Vec<Vec<BigUint>>,
}

impl DyckTable {
    pub fn new(cap: usize) -> Self {
        let width = cap + 1;
        let mut delta = vec![vec![BigUint::zero(); width]; width];
        for h in 0..width {
            delta[0][h] = BigUint::one();
            for n in 1..width {
                if h == 0 {
                    continue;
                }
                let mut acc = BigUint::zero();
                for k in 0..n {
                    acc += &delta[k][h] * &delta[n - 1 - k][h - 1];
                }
                delta[n][h] = acc;
            }
        }
        let mut delta_s = vec![vec![BigUint::zero(); width]; width + 1];
        for h in 0..width {
            delta_s[0][h] = BigUint::one();
            delta_s[1][h] = BigUint::one();
            if h == 0 {
                continue;
            }
            for n in 1..width {
                let mut acc = BigUint::zero();
                for k in 0..=n / 2 {
                    // Δˢ(n − 1 − 2k, h − 1) lives in row n − 2k.
                    acc += &delta[k][h] * &delta_s[n - 2 * k][h - 1];
                }
                delta_s[n + 1][h] = acc;
            }
        }
        DyckTable { cap, delta, delta_s }
    }

    /// Initialize-once table with the default cap.
    pub fn shared() -> &'static DyckTable {
        static TABLE: OnceLock<DyckTable> = OnceLock::new();
        TABLE.get_or_init(|| DyckTable::new(DEFAULT_TABLE_CAP))
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `Δ(n, h)`, or `None` outside the table.
    pub fn delta(&self, n: usize, h: usize) -> Option<&BigUint> {
        // A path of semilength n never rises above n.
        self.delta.get(n)?.get(h.min(n))
    }

    /// `Δˢ(n, h)` for `n ≥ −1`, or `None` outside the table.
    pub fn delta_s(&self, n: i64, h: usize) -> Option<&BigUint> {
        if n < -1 || n > self.cap as i64 {
            return None;
        }
        self.delta_s[(n + 1) as usize].get(h.min(n.max(0) as usize))
    }
}

/// `Δ(n, h)`: Dyck paths of semilength `n` within height `h`.
pub fn dyck_count(n: u64, h: u64) -> BigUint {
    let (n, h) = (n as usize, h.min(n) as usize);
    let shared = DyckTable::shared();
    match shared.delta(n, h) {
        Some(v) => v.clone(),
        None => DyckTable::new(n).delta(n, h).expect("in range").clone(),
    }
}

/// `Δˢ(n, h)` for `n ≥ −1`, with `Δˢ(−1, h) = 1`.
pub fn sym_dyck_count(n: i64, h: u64) -> Result<BigUint> {
    if n < -1 {
        return Err(usage!("symmetric Dyck counts need n ≥ −1, got {n}"));
    }
    let h = h.min(n.max(0) as u64) as usize;
    let shared = DyckTable::shared();
    Ok(match shared.delta_s(n, h) {
        Some(v) => v.clone(),
        None => DyckTable::new(n as usize).delta_s(n, h).expect("in range").clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

/// A lattice path as a sequence of `U`/`D` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath(pub Vec<Step>);

impl DyckPath {
    /// Invariant under reflection about the midpoint: reversed with up and
    /// down swapped.
    pub fn is_symmetric(&self) -> bool {
        let s = &self.0;
        s.iter().zip(s.iter().rev()).all(|(a, b)| a != b)
    }

    pub fn max_height(&self) -> u64 {
        let mut h = 0i64;
        let mut top = 0i64;
        for s in &self.0 {
            h += if *s == Step::Up { 1 } else { -1 };
            top = top.max(h);
        }
        top as u64
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Step::Up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                _ => Err(usage!("path steps must be U or D, got {c:?}")),
            })
            .collect::<Result<Vec<_>>>()
            .map(DyckPath)
    }
}

fn enumeration_guard(n: u64) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(resource!("enumeration is limited to n ≤ {ENUMERATION_LIMIT}, got {n}"));
    }
    Ok(())
}

/// Every Dyck path of semilength `n` within height `h`, in lexicographic
/// order (`U` before `D`).
pub fn dyck_enumerate(n: u64, h: u64) -> Result<Vec<DyckPath>> {
    enumeration_guard(n)?;
    let len = 2 * n as usize;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(len);
    fn walk(steps: &mut Vec<Step>, height: u64, len: usize, h: u64, out: &mut Vec<DyckPath>) {
        let remaining = len - steps.len();
        if remaining == 0 {
            out.push(DyckPath(steps.clone()));
            return;
        }
        // Going up is only useful if we can still come back down.
        if height < h && (height + 1) as usize <= remaining - 1 {
            steps.push(Step::Up);
            walk(steps, height + 1, len, h, out);
            steps.pop();
        }
        if height > 0 {
            steps.push(Step::Down);
            walk(steps, height - 1, len, h, out);
            steps.pop();
        }
    }
    walk(&mut steps, 0, len, h, &mut out);
    Ok(out)
}

/// The symmetric subset of [`dyck_enumerate`].
pub fn sym_dyck_enumerate(n: u64, h: u64) -> Result<Vec<DyckPath>> {
    Ok(dyck_enumerate(n, h)?.into_iter().filter(DyckPath::is_symmetric).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFamily {
    F,
    G,
}

impl FromStr for SeriesFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" | "F" => Ok(SeriesFamily::F),
            "g" | "G" => Ok(SeriesFamily::G),
            _ => Err(usage!("series family must be f or g, got {s:?}")),
        }
    }
}

impl fmt::Display for SeriesFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesFamily::F => "f",
            SeriesFamily::G => "g",
        })
    }
}

/// Leading coefficients of the expansion of `f_d` in powers of `x^{−2}` or of
/// `g_d` in powers of `x^{−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesApprox {
    pub family: SeriesFamily,
    pub d: u32,
    /// Term `i` multiplies `x^{−2i−2}` for `f`, `x^{−i−1}` for `g`.
    pub coefficients: Vec<ExactRational>,
}

impl SeriesApprox {
    /// Coefficients `0..=k`: `Δ(i, d−1)/2^{2i+1}` for `f`, `Δˢ(i, d−1)/2^i` for `g`.
    pub fn new(family: SeriesFamily, d: u32, k: u64) -> Result<Self> {
        if d == 0 {
            return Err(usage!("series need d ≥ 1"));
        }
        let h = u64::from(d - 1);
        let coefficients = (0..=k)
            .map(|i| {
                let (count, shift) = match family {
                    SeriesFamily::F => (dyck_count(i, h), 2 * i + 1),
                    SeriesFamily::G => (sym_dyck_count(i as i64, h).expect("i ≥ 0"), i),
                };
                ExactRational::new(BigInt::from(count), BigInt::one() << shift as usize).expect("nonzero")
            })
            .collect();
        Ok(SeriesApprox { family, d, coefficients })
    }

    fn power(&self, i: usize) -> u32 {
        match self.family {
            SeriesFamily::F => 2 * i as u32 + 2,
            SeriesFamily::G => i as u32 + 1,
        }
    }

    /// Partial sum at `x`.
    pub fn partial_sum(&self, x: &ExactRational) -> Result<ExactRational> {
        let inv = x.recip()?;
        Ok(self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * inv.pow(self.power(i)))
            .sum())
    }

    /// Bound on the omitted tail for `x > 1`: `x^{−2k−4}/(2(1 − x^{−2}))` for
    /// `f` (from `Δ(i, h) ≤ 4^i`) and `x^{−k−2}/(1 − x^{−1})` for `g` (from
    /// `Δˢ(i, h) ≤ 2^i`).
    pub fn tail_bound(&self, x: &ExactRational) -> Result<ExactRational> {
        let k = self.coefficients.len() as u32 - 1;
        let inv = x.recip()?;
        let one = ExactRational::one();
        Ok(match self.family {
            SeriesFamily::F => inv.pow(2 * k + 4) / ((one - inv.square()) * 2),
            SeriesFamily::G => inv.pow(k + 2) / (one - inv),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FMode {
    /// `U_{d−1}(x)/(x·U_d(x))`.
    Exact,
    /// `f₁ = 1/(2x²)`, `f_d = 1/(x²(2 − f_{d−1}))`.
    Recurrence,
    /// Power series through term `k`.
    Series(u64),
    /// `1 − √(1 − 1/x²)` at the given precision.
    Limit { precision: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GMode {
    /// `2U_{d/2−1}/V_{d/2}` for even `d`, `W_{(d−1)/2}/T_{(d+1)/2}` for odd `d`.
    Exact,
    /// `2·Σ_{k<d} U_k(x)/U_d(x)`.
    SumU,
    /// `g₁ = 1/x`, `g_d = x·f_d·(2 + g_{d−1})`.
    Recurrence,
    /// Power series through term `k`.
    Series(u64),
    /// `√((x + 1)/(x − 1)) − 1` at the given precision.
    Limit { precision: usize },
}

fn ratio(num: ExactRational, den: ExactRational, what: &str) -> Result<ExactRational> {
    num.checked_div(&den).map_err(|_| domain!("{what}: denominator vanishes at this x"))
}

fn cheb(kind: ChebKind, k: u32, x: &ExactRational) -> ExactRational {
    eval(kind, k as usize, x)
}

/// `f_d(x) = U_{d−1}(x)/(x·U_d(x))` in the requested mode.
pub fn f_d(d: u32, x: &ExactRational, mode: FMode) -> Result<RootValue> {
    if d == 0 {
        return Err(usage!("f_d needs d ≥ 1"));
    }
    let needs_outside = matches!(mode, FMode::Series(_) | FMode::Limit { .. });
    if needs_outside && x.abs() <= ExactRational::one() {
        return Err(domain!("the f_d series and limit need |x| > 1, got {x}"));
    }
    Ok(match mode {
        FMode::Exact => RootValue::Exact(ratio(
            cheb(ChebKind::SecondU, d - 1, x),
            x * cheb(ChebKind::SecondU, d, x),
            "f_d",
        )?),
        FMode::Recurrence => {
            let x2 = x.square();
            let mut f = ratio(ExactRational::one(), &x2 * 2, "f_1")?;
            for _ in 2..=d {
                f = ratio(ExactRational::one(), &x2 * (ExactRational::from(2) - f), "f_d")?;
            }
            RootValue::Exact(f)
        }
        FMode::Series(k) => RootValue::Exact(SeriesApprox::new(SeriesFamily::F, d, k)?.partial_sum(x)?),
        FMode::Limit { precision } => {
            let one = BigFloat::from_i64(1, precision);
            let xf = BigFloat::from_rational(x, precision);
            RootValue::Float(one.sub(&one.sub(&one.div(&xf.mul(&xf))).sqrt()))
        }
    })
}

/// `g_d(x)` in the requested mode.
pub fn g_d(d: u32, x: &ExactRational, mode: GMode) -> Result<RootValue> {
    if d == 0 {
        return Err(usage!("g_d needs d ≥ 1"));
    }
    let needs_outside = matches!(mode, GMode::Series(_) | GMode::Limit { .. });
    if needs_outside && *x <= ExactRational::one() {
        return Err(domain!("the g_d series and limit need x > 1, got {x}"));
    }
    Ok(match mode {
        GMode::Exact => RootValue::Exact(if d % 2 == 0 {
            ratio(cheb(ChebKind::SecondU, d / 2 - 1, x) * 2, cheb(ChebKind::ThirdV, d / 2, x), "g_d")?
        } else {
            ratio(cheb(ChebKind::FourthW, (d - 1) / 2, x), cheb(ChebKind::FirstT, (d + 1) / 2, x), "g_d")?
        }),
        GMode::SumU => {
            let sum: ExactRational = (0..d).map(|k| cheb(ChebKind::SecondU, k, x)).sum();
            RootValue::Exact(ratio(sum * 2, cheb(ChebKind::SecondU, d, x), "g_d")?)
        }
        GMode::Recurrence => {
            let mut g = x.recip().map_err(|_| domain!("g_1 is undefined at x = 0"))?;
            let mut f = ratio(ExactRational::one(), x.square() * 2, "f_1")?;
            for _ in 2..=d {
                f = ratio(ExactRational::one(), x.square() * (ExactRational::from(2) - &f), "f_d")?;
                g = x * &f * (g + 2);
            }
            RootValue::Exact(g)
        }
        GMode::Series(k) => RootValue::Exact(SeriesApprox::new(SeriesFamily::G, d, k)?.partial_sum(x)?),
        GMode::Limit { precision } => {
            let one = BigFloat::from_i64(1, precision);
            let xf = BigFloat::from_rational(x, precision);
            RootValue::Float(xf.add(&one).div(&xf.sub(&one)).sqrt().sub(&one))
        }
    })
}
