use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{cosine_product, div_nonzero, RootValue, SqrtProblem};
use crate::chebyshev::{eval, ChebKind};
use crate::error::{resource, usage, Error, Result};
use crate::numeric::{checked_pow, ExactRational};

use ChebKind::{FirstT as T, FourthW as W, SecondU as U, ThirdV as V};

/// Ways of computing the order-`d` Householder iterate `𝓗ₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HouseholderForm {
    /// The rational recurrence built from binomial coefficients of `d + 1`.
    Iterate,
    /// `r·W_K/V_K` (even `d`) or `r·T_K/((X − 1)·U_{K−1})` (odd `d`).
    Cheb,
    /// Cosine-root factorization of [`HouseholderForm::Cheb`], at `precision` bits.
    Monomial { precision: usize },
    /// Even `d = 2p`: `r·∏_{j=1}^{n} W_p(Y_j)/V_p(Y_j)` with `Y_j = T_{(d+1)^{j−1}}(X)`.
    ProductEven,
    /// Odd `d`: the second-kind denominator split along the 2-adic valuation of `d + 1`.
    FactoredOdd,
    /// Odd `d`: `𝓗ₙ₊₁ = 𝓗ₙ·T_{d+1}(Xₙ)/(Xₙ·U_d(Xₙ))` with `Xₙ = T_{(d+1)^n/2}(X)`.
    RecursiveOdd,
    /// `r·Σ C(N, 2k)·x^k·r^{N−2k} / Σ C(N, 2k+1)·x^k·r^{N−2k}` with `N = (d+1)^n`.
    Binomial,
    /// Multiplicative loop driven by [`phi`].
    Algorithm4,
}

impl HouseholderForm {
    /// Every form with an exact rational result.
    pub const EXACT: [HouseholderForm; 7] = [
        HouseholderForm::Iterate,
        HouseholderForm::Cheb,
        HouseholderForm::ProductEven,
        HouseholderForm::FactoredOdd,
        HouseholderForm::RecursiveOdd,
        HouseholderForm::Binomial,
        HouseholderForm::Algorithm4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HouseholderForm::Iterate => "Iterate",
            HouseholderForm::Cheb => "Cheb",
            HouseholderForm::Monomial { .. } => "Monomial",
            HouseholderForm::ProductEven => "ProductEven",
            HouseholderForm::FactoredOdd => "FactoredOdd",
            HouseholderForm::RecursiveOdd => "RecursiveOdd",
            HouseholderForm::Binomial => "Binomial",
            HouseholderForm::Algorithm4 => "Algorithm4",
        }
    }

    /// `Ok(())` when the form is defined for this order and step count.
    pub fn check_applicable(self, d: u32, n: u32) -> Result<()> {
        if d == 0 {
            return Err(usage!("Householder order d must be at least 1"));
        }
        let even = d % 2 == 0;
        match self {
            HouseholderForm::ProductEven if !even => {
                Err(usage!("ProductEven needs an even order, got d = {d}"))
            }
            HouseholderForm::FactoredOdd | HouseholderForm::RecursiveOdd if even => {
                Err(usage!("{} needs an odd order, got d = {d}", self.name()))
            }
            HouseholderForm::FactoredOdd | HouseholderForm::RecursiveOdd | HouseholderForm::Algorithm4
                if n == 0 =>
            {
                Err(usage!("{} needs n ≥ 1", self.name()))
            }
            _ => Ok(()),
        }
    }

    pub fn is_applicable(self, d: u32, n: u32) -> bool {
        self.check_applicable(d, n).is_ok()
    }
}

impl FromStr for HouseholderForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "iterate" => HouseholderForm::Iterate,
            "cheb" | "chebyshev" => HouseholderForm::Cheb,
            "monomial" => HouseholderForm::Monomial { precision: 256 },
            "producteven" | "product-even" | "product" => HouseholderForm::ProductEven,
            "factoredodd" | "factored-odd" | "factored" => HouseholderForm::FactoredOdd,
            "recursiveodd" | "recursive-odd" | "recursive" => HouseholderForm::RecursiveOdd,
            "binomial" => HouseholderForm::Binomial,
            "algorithm4" | "algorithm" => HouseholderForm::Algorithm4,
            _ => return Err(usage!("unknown Householder form {s:?}")),
        })
    }
}

fn cheb(kind: ChebKind, k: u64, x: &ExactRational) -> Result<ExactRational> {
    let k = usize::try_from(k).map_err(|_| resource!("Chebyshev index {k} too large"))?;
    Ok(eval(kind, k, x))
}

/// One Householder step of order `d` for `√x`:
/// `Σ C(d+1, 2k)·H^{d+1−2k}·x^k / Σ C(d+1, 2k+1)·H^{d−2k}·x^k`.
pub fn householder_step(x: &ExactRational, h: &ExactRational, d: u32) -> Result<ExactRational> {
    let e = d as usize + 1;
    let row = binomial_row(e as u64);
    let h_pows: Vec<ExactRational> = std::iter::successors(Some(ExactRational::one()), |p| Some(p * h))
        .take(e + 1)
        .collect();
    let mut num = ExactRational::zero();
    let mut den = ExactRational::zero();
    let mut xk = ExactRational::one();
    for k in 0..=e / 2 {
        num = num + ExactRational::from_integer(row[2 * k].clone()) * &h_pows[e - 2 * k] * &xk;
        if 2 * k < e {
            den = den + ExactRational::from_integer(row[2 * k + 1].clone()) * &h_pows[e - 1 - 2 * k] * &xk;
        }
        xk = xk * x;
    }
    div_nonzero(&num, &den, "householder step")
}

fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// `Σ_k c_k·p^k·q^{K−k}` for `y = p/q`, i.e. `q^K·Σ c_k y^k`.
fn homogeneous_sum(coeffs: &[BigInt], y: &ExactRational) -> BigInt {
    let (p, q) = (y.numer(), y.denom());
    let mut iter = coeffs.iter().rev();
    let mut acc = iter.next().cloned().unwrap_or_else(BigInt::zero);
    let mut pw = BigInt::one();
    for c in iter {
        pw *= q;
        acc = acc * p + c * &pw;
    }
    acc
}

/// `r·Σ C(N, 2k) y^k / Σ C(N, 2k+1) y^k` with `y = x/r²`.
fn binomial_form(prob: &SqrtProblem, big_n: u64) -> Result<ExactRational> {
    let row = binomial_row(big_n);
    let evens: Vec<BigInt> = row.iter().step_by(2).cloned().collect();
    let odds: Vec<BigInt> = row.iter().skip(1).step_by(2).cloned().collect();
    let y = prob.x() / prob.r().square();
    let a = homogeneous_sum(&evens, &y);
    let b = homogeneous_sum(&odds, &y);
    // The even sum has degree ⌊N/2⌋, the odd one ⌊(N−1)/2⌋.
    let shift = (evens.len() - odds.len()) as u32;
    let den = b * num_traits::pow(y.denom().clone(), shift as usize);
    let ratio = ExactRational::new(a, den).map_err(|_| Error::Internal("binomial form: zero denominator".into()))?;
    Ok(prob.r() * ratio)
}

/// `(d + 1)^n`, guarded against overflow and against the operand cap.
fn total_degree(prob: &SqrtProblem, d: u32, n: u32) -> Result<u64> {
    let big_n = checked_pow(u64::from(d) + 1, n, "householder")?;
    prob.guard().check_degree("householder", big_n, prob.unit_bits())?;
    Ok(big_n)
}

/// Chebyshev closed form, valid for every `n` (odd `d` with `n = 0` is `r`).
fn cheb_form(prob: &SqrtProblem, big_n: u64) -> Result<ExactRational> {
    let (r, big_x) = (prob.r(), prob.big_x());
    if big_n % 2 == 1 {
        let k = (big_n - 1) / 2;
        div_nonzero(&(r * cheb(W, k, big_x)?), &cheb(V, k, big_x)?, "householder cheb")
    } else {
        let k = big_n / 2;
        let den = (big_x - 1) * cheb(U, k - 1, big_x)?;
        div_nonzero(&(r * cheb(T, k, big_x)?), &den, "householder cheb")
    }
}

/// Algorithm 4's correction: `2U_{d/2−1}(X)/V_{d/2}(X)` for even `d`,
/// `−U_{d−1}(X)/(X·U_d(X))` for odd `d`.
pub fn phi(d: u32, x: &ExactRational) -> Result<ExactRational> {
    if d == 0 {
        return Err(usage!("phi needs d ≥ 1"));
    }
    let d = u64::from(d);
    if d % 2 == 0 {
        let p = d / 2;
        div_nonzero(&(cheb(U, p - 1, x)? * 2), &cheb(V, p, x)?, "phi")
    } else {
        div_nonzero(&-cheb(U, d - 1, x)?, &(x * cheb(U, d, x)?), "phi")
    }
}

/// Householder iterate `𝓗ₙ` of order `d` for `√x` started at `r`.
pub fn householder(prob: &SqrtProblem, d: u32, n: u32, form: HouseholderForm) -> Result<RootValue> {
    form.check_applicable(d, n)?;
    let big_n = total_degree(prob, d, n)?;
    let (r, big_x, guard) = (prob.r(), prob.big_x(), prob.guard());
    let d64 = u64::from(d);
    let value = match form {
        HouseholderForm::Iterate => {
            let mut h = r.clone();
            for _ in 0..n {
                h = householder_step(prob.x(), &h, d)?;
                guard.check("householder iterate", &h)?;
            }
            h
        }
        HouseholderForm::Cheb => cheb_form(prob, big_n)?,
        HouseholderForm::Monomial { precision } => {
            let value = if big_n % 2 == 1 {
                let k = (big_n - 1) / 2;
                cosine_product(prob, (1..=k).map(|j| 2 * j), (1..=k).map(|j| 2 * j - 1), big_n, precision)
            } else {
                let k = big_n / 2;
                cosine_product(prob, (0..k).map(|j| 2 * j + 1), (0..k).map(|j| 2 * j), big_n, precision)
            };
            return Ok(RootValue::Float(value));
        }
        HouseholderForm::ProductEven => {
            let p = d64 / 2;
            let mut h = r.clone();
            let mut idx = 1u64;
            for _ in 0..n {
                let y = cheb(T, idx, big_x)?;
                h = h * div_nonzero(&cheb(W, p, &y)?, &cheb(V, p, &y)?, "product even")?;
                guard.check("householder product", &h)?;
                idx *= d64 + 1;
            }
            h
        }
        HouseholderForm::FactoredOdd => {
            let alpha = (d64 + 1).trailing_zeros() as u64;
            let p = ((d64 + 1) >> alpha) / 2;
            let n64 = u64::from(n);
            let mut den = big_x - 1;
            let mut pw = d64 + 1;
            for _ in 0..n64.saturating_sub(1) {
                den = den * cheb(T, pw / 2, big_x)?;
                pw *= d64 + 1;
            }
            let mut pj = 1u64;
            for _ in 0..n64 {
                for k in 0..alpha.saturating_sub(1) {
                    den = den * cheb(T, (1u64 << k) * pj, big_x)?;
                }
                let y = cheb(T, (1u64 << alpha) * pj, big_x)?;
                den = den * cheb(W, p, &y)?;
                pj *= d64 + 1;
                guard.check("householder factored", &den)?;
            }
            let scale = ExactRational::from_integer(BigInt::one() << (alpha * n64 - 1) as usize);
            div_nonzero(&(r * cheb(T, big_n / 2, big_x)?), &(scale * den), "factored odd")?
        }
        HouseholderForm::RecursiveOdd => {
            let k = (d64 + 1) / 2;
            let mut h = div_nonzero(
                &(r * cheb(T, k, big_x)?),
                &((big_x - 1) * cheb(U, k - 1, big_x)?),
                "recursive odd",
            )?;
            let mut pw = d64 + 1;
            for _ in 1..n {
                let y = cheb(T, pw / 2, big_x)?;
                h = h * div_nonzero(&cheb(T, d64 + 1, &y)?, &(&y * cheb(U, d64, &y)?), "recursive odd")?;
                guard.check("householder recursive", &h)?;
                pw *= d64 + 1;
            }
            h
        }
        HouseholderForm::Binomial => binomial_form(prob, big_n)?,
        HouseholderForm::Algorithm4 => {
            let (mut s, mut t) = if d % 2 == 0 {
                (r * (ExactRational::one() + phi(d, big_x)?), cheb(T, d64 + 1, big_x)?)
            } else {
                let t = cheb(T, (d64 + 1) / 2, big_x)?;
                let u = cheb(U, (d64 + 1) / 2 - 1, big_x)?;
                (div_nonzero(&(r * &t), &((big_x - 1) * u), "algorithm 4")?, t)
            };
            for _ in 2..=n {
                s = s * (ExactRational::one() + phi(d, &t)?);
                t = cheb(T, d64 + 1, &t)?;
                guard.check("algorithm 4", &s)?;
            }
            s
        }
    };
    guard.check("householder", &value)?;
    Ok(RootValue::Exact(value))
}

/// `𝓗ₙ₊₁ − 𝓗ₙ` from the closed residual forms:
/// `2𝓗ₙ·U_{p−1}(Y)/V_p(Y)` with `Y = T_{(d+1)^n}(X)` for even `d = 2p`, and
/// `−𝓗ₙ·U_{d−1}(Xₙ)/(Xₙ·U_d(Xₙ))` with `Xₙ = T_{(d+1)^n/2}(X)` for odd `d`.
pub fn residual(prob: &SqrtProblem, d: u32, n: u32) -> Result<ExactRational> {
    if d == 0 {
        return Err(usage!("Householder order d must be at least 1"));
    }
    let big_n = total_degree(prob, d, n + 1)? / (u64::from(d) + 1);
    let h = cheb_form(prob, big_n)?;
    let d64 = u64::from(d);
    let big_x = prob.big_x();
    if d % 2 == 0 {
        let p = d64 / 2;
        let y = cheb(T, big_n, big_x)?;
        div_nonzero(&(h * 2 * cheb(U, p - 1, &y)?), &cheb(V, p, &y)?, "residual")
    } else if n == 0 {
        Ok(cheb_form(prob, d64 + 1)? - prob.r())
    } else {
        let y = cheb(T, big_n / 2, big_x)?;
        div_nonzero(&-(h * cheb(U, d64 - 1, &y)?), &(&y * cheb(U, d64, &y)?), "residual")
    }
}

/// `𝒜ₙ`: the binomial closed form with exponent `n` in place of `(d+1)^n`,
/// so that `𝒜_{(d+1)^n} = 𝓗ₙ` for every order `d`.
pub fn slow_sequence(prob: &SqrtProblem, n: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(usage!("slow_sequence needs n ≥ 1"));
    }
    prob.guard().check_degree("slow_sequence", n, prob.unit_bits())?;
    let v = binomial_form(prob, n)?;
    prob.guard().check("slow_sequence", &v)?;
    Ok(v)
}
