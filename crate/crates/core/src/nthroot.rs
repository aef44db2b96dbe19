//! Householder iterations of any order for `x^{1/p}`.
//!
//! The step is a ratio of two polynomials in `H` whose coefficients are
//! generalized binomial coefficients of order `p`, i.e. coefficients of
//! `B_p(t)^n = (1 + t + … + t^{p−1})^n`. Each polynomial keeps only the
//! powers of `B_p^{d+1}` in one residue class mod `p`, which is how the
//! roots-of-unity filter is realized without complex numbers.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{domain, usage, Error, Result};
use crate::numeric::{binomial, checked_pow, int_root_rounded, BigFloat, BitGuard, ExactRational};
use crate::sqrt::{Family, IterationTrace, MethodDescriptor};

/// Coefficient of `t^m` in `(1 + t + … + t^{p−1})^n`, from the alternating sum
/// `Σ_{k=0}^{⌊m/p⌋} (−1)^k C(n, k)·C(n + m − pk − 1, n − 1)`. Zero when `m`
/// is outside `0..=(p−1)n`.
pub fn gen_binomial(n: u64, m: i64, p: u64) -> BigUint {
    if p < 2 || m < 0 || m as u64 > (p - 1) * n {
        return BigUint::zero();
    }
    if n == 0 {
        return BigUint::from(1u8);
    }
    let m = m as u64;
    let mut acc = BigInt::zero();
    for k in 0..=m / p {
        let term = BigInt::from(binomial(n, k as i64)) * BigInt::from(binomial(n + m - p * k - 1, n as i64 - 1));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(!acc.is_negative());
    acc.to_biguint().expect("non-negative")
}

/// Rows `0..=max_n` of generalized binomial coefficients of order `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenBinomTable {
    p: u64,
    rows: Vec<Vec<BigUint>>,
}

/// Rows kept by the shared tables.
const SHARED_ROWS: u64 = 64;
/// Orders `2..=SHARED_MAX_P` get a shared table.
const SHARED_MAX_P: u64 = 16;

impl GenBinomTable {
    pub fn new(p: u64, max_n: u64) -> Result<Self> {
        if p < 2 {
            return Err(usage!("generalized binomials need p ≥ 2, got {p}"));
        }
        let rows = (0..=max_n)
            .map(|n| (0..=(p - 1) * n).map(|m| gen_binomial(n, m as i64, p)).collect())
            .collect();
        Ok(GenBinomTable { p, rows })
    }

    /// Initialize-once table of order `p` with rows up to 64, for `2 ≤ p ≤ 16`.
    pub fn shared(p: u64) -> Option<&'static GenBinomTable> {
        static TABLES: [OnceLock<GenBinomTable>; (SHARED_MAX_P - 1) as usize] =
            [const { OnceLock::new() }; (SHARED_MAX_P - 1) as usize];
        if !(2..=SHARED_MAX_P).contains(&p) {
            return None;
        }
        Some(TABLES[(p - 2) as usize].get_or_init(|| Self::new(p, SHARED_ROWS).expect("p ≥ 2")))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_n(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    pub fn row(&self, n: u64) -> Option<&[BigUint]> {
        self.rows.get(n as usize).map(Vec::as_slice)
    }

    pub fn get(&self, n: u64, m: i64) -> BigUint {
        match self.row(n) {
            Some(row) if m >= 0 => row.get(m as usize).cloned().unwrap_or_default(),
            Some(_) => BigUint::zero(),
            None => gen_binomial(n, m, self.p),
        }
    }
}

fn gen_binom_cached(n: u64, m: i64, p: u64) -> BigUint {
    match GenBinomTable::shared(p) {
        Some(t) => t.get(n, m),
        None => gen_binomial(n, m, p),
    }
}

/// Terms of `B_p^e` whose exponent is `≡ ℓ (mod p)`, as `(exponent, coefficient)`.
pub fn poly_power_filter(p: u64, e: u64, residue: u64) -> Result<Vec<(u64, BigUint)>> {
    if p < 2 {
        return Err(usage!("filter needs p ≥ 2, got {p}"));
    }
    if residue >= p {
        return Err(usage!("residue {residue} must be below p = {p}"));
    }
    Ok((residue..=(p - 1) * e)
        .step_by(p as usize)
        .map(|m| (m, gen_binom_cached(e, m as i64, p)))
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// One term `c·H^{h_exp}·x^{x_exp}` of the step's numerator or denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepTerm {
    pub coeff: BigUint,
    pub h_exp: u64,
    pub x_exp: u64,
}

/// Numerator of the order-`d` step:
/// `Σ_{k=0}^{⌊((p−1)d+1)/p⌋} C_p(d+1, p(k+1) − 2)·H^{d(p−1)+1−pk}·x^k`.
pub fn numerator_terms(p: u64, d: u64) -> Vec<StepTerm> {
    let top = d * (p - 1) + 1;
    (0..=top / p)
        .map(|k| StepTerm {
            coeff: gen_binom_cached(d + 1, (p * (k + 1)) as i64 - 2, p),
            h_exp: top - p * k,
            x_exp: k,
        })
        .collect()
}

/// Denominator of the order-`d` step:
/// `Σ_{k=0}^{⌊(p−1)d/p⌋} C_p(d+1, p(k+1) − 1)·H^{d(p−1)−pk}·x^k`.
pub fn denominator_terms(p: u64, d: u64) -> Vec<StepTerm> {
    let top = d * (p - 1);
    (0..=top / p)
        .map(|k| StepTerm {
            coeff: gen_binom_cached(d + 1, (p * (k + 1)) as i64 - 1, p),
            h_exp: top - p * k,
            x_exp: k,
        })
        .collect()
}

/// Input to the pth-root engine.
#[derive(Debug, Clone, PartialEq)]
pub struct PthRootProblem {
    x: ExactRational,
    p: u32,
    r: ExactRational,
    d: u32,
    guard: BitGuard,
}

impl PthRootProblem {
    pub fn new(x: ExactRational, p: u32, r: ExactRational, d: u32) -> Result<Self> {
        if p < 2 {
            return Err(usage!("root degree p must be at least 2, got {p}"));
        }
        if d == 0 {
            return Err(usage!("Householder order d must be at least 1"));
        }
        if !x.is_positive() {
            return Err(domain!("x must be positive, got {x}"));
        }
        if !r.is_positive() {
            return Err(domain!("seed r must be positive, got {r}"));
        }
        Ok(PthRootProblem { x, p, r, d, guard: BitGuard::default() })
    }

    /// Seeds with `round(x^{1/p})`, at least 1.
    pub fn with_default_seed(x: ExactRational, p: u32, d: u32) -> Result<Self> {
        if p < 2 {
            return Err(usage!("root degree p must be at least 2, got {p}"));
        }
        let r = ExactRational::from_integer(int_root_rounded(&x, p)?);
        Self::new(x, p, r, d)
    }

    pub fn with_guard(mut self, guard: BitGuard) -> Self {
        self.guard = guard;
        self
    }

    pub fn x(&self) -> &ExactRational {
        &self.x
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> &ExactRational {
        &self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `x^{1/p}` at the given precision.
    pub fn reference_root(&self, precision: usize) -> BigFloat {
        BigFloat::from_rational(&self.x, precision + 64)
            .nth_root(self.p)
            .with_precision(precision)
    }
}

fn eval_terms(terms: &[StepTerm], h_pows: &[ExactRational], x_pows: &[ExactRational]) -> ExactRational {
    terms
        .iter()
        .map(|t| {
            ExactRational::from_integer(BigInt::from(t.coeff.clone()))
                * &h_pows[t.h_exp as usize]
                * &x_pows[t.x_exp as usize]
        })
        .sum()
}

/// One step `H ↦ N(H)/D(H)` of the order-`d` method for `x^{1/p}`.
pub fn pth_root_step(prob: &PthRootProblem, h: &ExactRational) -> Result<ExactRational> {
    let (p, d) = (u64::from(prob.p), u64::from(prob.d));
    let num = numerator_terms(p, d);
    let den = denominator_terms(p, d);
    let top = (d * (p - 1) + 1) as usize;
    let h_pows: Vec<ExactRational> =
        std::iter::successors(Some(ExactRational::one()), |v| Some(v * h)).take(top + 1).collect();
    let x_pows: Vec<ExactRational> =
        std::iter::successors(Some(ExactRational::one()), |v| Some(v * &prob.x)).take(top / p as usize + 1).collect();
    let n = eval_terms(&num, &h_pows, &x_pows);
    let dn = eval_terms(&den, &h_pows, &x_pows);
    n.checked_div(&dn)
        .map_err(|_| Error::Internal("pth-root step: denominator sum vanished".into()))
}

/// `𝐇ₙ` for `x^{1/p}` started at `r`.
pub fn pth_root_iterate(prob: &PthRootProblem, n: u32) -> Result<ExactRational> {
    Ok(pth_root_trace(prob, n)?.values.pop().expect("seeded"))
}

/// `𝐇₀ = r` through `𝐇ₙ`.
pub fn pth_root_trace(prob: &PthRootProblem, n: u32) -> Result<IterationTrace> {
    let fixed = prob.r.pow(prob.p) == prob.x;
    if !fixed {
        let growth = u64::from(prob.d) * u64::from(prob.p - 1) + 1;
        let degree = checked_pow(growth, n, "pth root")?;
        let unit = prob.x.max_bits() + prob.r.max_bits() + 1;
        prob.guard.check_degree("pth root", degree, unit)?;
    }
    let mut values = vec![prob.r.clone()];
    for _ in 0..n {
        let last = values.last().expect("seeded");
        let next = if fixed { last.clone() } else { pth_root_step(prob, last)? };
        prob.guard.check("pth root iterate", &next)?;
        values.push(next);
    }
    let method = MethodDescriptor { family: Family::PthRoot, d: prob.d, form: format!("p={}", prob.p) };
    Ok(IterationTrace::new(method, values))
}
