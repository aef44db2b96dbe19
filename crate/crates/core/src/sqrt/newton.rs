use std::str::FromStr;

use num_bigint::BigInt;

use super::{cosine_product, div_nonzero, RootValue, SqrtProblem};
use crate::chebyshev::{eval, ChebKind};
use crate::error::{domain, usage, Error, Result};
use crate::numeric::{binomial, checked_pow, ExactRational};

/// Ways of computing the Newton (Babylonian) iterate `uₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonForm {
    /// `u₀ = r`, `uₙ₊₁ = uₙ/2 + x/(2uₙ)`.
    Iterate,
    /// `M/r − (b/r)·Σ_{k=1}^{n−1} 1/(2^k·∏_{j<k} T_{2^j}(X))`.
    Sum,
    /// `(b/r)·T_{2^{n−1}}(X) / (2^{n−1}·∏_{j≤n−2} T_{2^j}(X))`.
    Ratio,
    /// `r·T_{2^{n−1}}(X) / ((X − 1)·U_{2^{n−1}−1}(X))`.
    SecondKind,
    /// Cosine-root factorization of the second-kind ratio, at `precision` bits.
    Monomial { precision: usize },
    /// The additive loop that updates `S`, `X` and the correction `e`.
    Algorithm1,
}

impl FromStr for NewtonForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "iterate" => NewtonForm::Iterate,
            "sum" => NewtonForm::Sum,
            "ratio" => NewtonForm::Ratio,
            "secondkind" | "second-kind" => NewtonForm::SecondKind,
            "monomial" => NewtonForm::Monomial { precision: 256 },
            "algorithm1" | "algorithm" => NewtonForm::Algorithm1,
            _ => return Err(usage!("unknown Newton form {s:?}")),
        })
    }
}

/// Newton iterate `uₙ` for `√x` started at `r`.
pub fn newton(prob: &SqrtProblem, n: u32, form: NewtonForm) -> Result<RootValue> {
    if n == 0 && form != NewtonForm::Iterate {
        return Err(usage!("closed Newton forms need n ≥ 1"));
    }
    if n > 0 {
        let half = checked_pow(2, n - 1, "newton")?;
        prob.guard().check_degree("newton", half, prob.unit_bits())?;
    }
    let (x, r, b, big_x) = (prob.x(), prob.r(), prob.b(), prob.big_x());
    let guard = prob.guard();
    let exact = match form {
        NewtonForm::Iterate => {
            let mut u = r.clone();
            for _ in 0..n {
                u = &u / 2 + div_nonzero(x, &(&u * 2), "newton")?;
                guard.check("newton iterate", &u)?;
            }
            u
        }
        NewtonForm::Sum => {
            let mut t = big_x.clone();
            let mut prod = ExactRational::one();
            let mut sum = ExactRational::zero();
            for k in 1..n {
                prod = &prod * &t;
                let pow2 = ExactRational::from_integer(BigInt::from(1u8) << k as usize);
                sum = sum + div_nonzero(&ExactRational::one(), &(pow2 * &prod), "newton sum")?;
                t = t.square() * 2 - 1;
                guard.check("newton sum", &sum)?;
            }
            prob.m() / r - (b / r) * sum
        }
        NewtonForm::Ratio => {
            let mut t = big_x.clone();
            let mut prod = ExactRational::one();
            for _ in 0..n - 1 {
                prod = &prod * &t;
                t = t.square() * 2 - 1;
                guard.check("newton ratio", &t)?;
            }
            let pow2 = ExactRational::from_integer(BigInt::from(1u8) << (n - 1) as usize);
            div_nonzero(&((b / r) * t), &(pow2 * prod), "newton ratio")?
        }
        NewtonForm::SecondKind => {
            let k = 1usize << (n - 1);
            let t = eval(ChebKind::FirstT, k, big_x);
            let u = eval(ChebKind::SecondU, k - 1, big_x);
            div_nonzero(&(r * t), &((big_x - 1) * u), "newton second kind")?
        }
        NewtonForm::Monomial { precision } => {
            let big_n = 1u64 << n;
            let half = big_n / 2;
            return Ok(RootValue::Float(cosine_product(
                prob,
                (0..half).map(|k| 2 * k + 1),
                (0..half).map(|k| 2 * k),
                big_n,
                precision,
            )));
        }
        NewtonForm::Algorithm1 => {
            let mut s = prob.m() / r;
            let mut xx = big_x.clone();
            let mut e = div_nonzero(&(r.square() - x), &(r * &xx * 4), "algorithm 1")?;
            for _ in 2..=n {
                s = s + &e;
                xx = xx.square() * 2 - 1;
                e = div_nonzero(&e, &(&xx * 2), "algorithm 1")?;
                guard.check("algorithm 1", &s)?;
            }
            s
        }
    };
    guard.check("newton", &exact)?;
    Ok(RootValue::Exact(exact))
}

/// Truncated Taylor expansion of `√x = √(r² + 2b)` around the seed:
/// `r + b/r − Σ_{m=1}^{n−1} C(2m, m)/(4^m(2m − 1)) · b^{2m}/(r·M^{2m−1})`.
pub fn taylor_hat(prob: &SqrtProblem, n: u32) -> Result<ExactRational> {
    if n == 0 {
        return Err(usage!("taylor_hat needs n ≥ 1"));
    }
    let (r, b, m) = (prob.r(), prob.b(), prob.m());
    let mut acc = r + b / r;
    for k in 1..n {
        let c = ExactRational::new(
            BigInt::from(binomial(2 * k as u64, k as i64)),
            BigInt::from(4u8).pow(k) * (2 * k - 1),
        )?;
        acc = acc - c * div_nonzero(&b.pow(2 * k), &(r * m.pow(2 * k - 1)), "taylor")?;
        prob.guard().check("taylor_hat", &acc)?;
    }
    Ok(acc)
}

/// Partial product `∏_{j=0}^{k} (1 + 1/Xⱼ)` with `X₀ = x/r²` and
/// `Xⱼ₊₁ = 2Xⱼ² − 1`, which tends to `√((x + r²)/(x − r²))` from below.
/// Needs `x > r²` so that every `Xⱼ > 1`.
pub fn engel_partial(prob: &SqrtProblem, k: u32) -> Result<ExactRational> {
    if !prob.b().is_positive() {
        return Err(domain!("the Engel product needs x > r²"));
    }
    let mut xj = prob.x() / prob.r().square();
    let mut acc = ExactRational::one();
    for j in 0..=k {
        acc = acc * (ExactRational::one() + xj.recip()?);
        prob.guard().check("engel_partial", &acc)?;
        if j < k {
            xj = xj.square() * 2 - 1;
        }
    }
    Ok(acc)
}
