use std::str::FromStr;

use super::{div_nonzero, SqrtProblem};
use crate::chebyshev::{eval, ChebKind};
use crate::error::{usage, Error, Result};
use crate::numeric::{checked_pow, ExactRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalleyForm {
    /// `hₙ₊₁ = hₙ(hₙ² + 3x)/(3hₙ² + x)`.
    Iterate,
    /// `r·∏_{i=1}^{n} (2T_{3^{i−1}}(X) + 1)/(2T_{3^{i−1}}(X) − 1)`.
    Product,
    /// The product accumulated with the tripling rule `T ← T(4T² − 3)`.
    Algorithm,
}

impl FromStr for HalleyForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "iterate" => HalleyForm::Iterate,
            "product" => HalleyForm::Product,
            "algorithm" => HalleyForm::Algorithm,
            _ => return Err(usage!("unknown Halley form {s:?}")),
        })
    }
}

/// Halley iterate `hₙ` for `√x` started at `r`.
pub fn halley(prob: &SqrtProblem, n: u32, form: HalleyForm) -> Result<ExactRational> {
    let degree = checked_pow(3, n, "halley")?;
    prob.guard().check_degree("halley", degree, prob.unit_bits())?;
    let (x, big_x, guard) = (prob.x(), prob.big_x(), prob.guard());
    let mut h = prob.r().clone();
    match form {
        HalleyForm::Iterate => {
            for _ in 0..n {
                let h2 = h.square();
                h = div_nonzero(&(&h * (&h2 + x * 3)), &(h2 * 3 + x), "halley")?;
                guard.check("halley iterate", &h)?;
            }
        }
        HalleyForm::Product => {
            for i in 1..=n {
                let t = eval(ChebKind::FirstT, 3usize.pow(i - 1), big_x);
                h = h * div_nonzero(&(&t * 2 + 1), &(t * 2 - 1), "halley product")?;
                guard.check("halley product", &h)?;
            }
        }
        HalleyForm::Algorithm => {
            let mut t = big_x.clone();
            for _ in 0..n {
                h = h * (ExactRational::one() + div_nonzero(&ExactRational::from(2), &(&t * 2 - 1), "halley")?);
                t = &t * (t.square() * 4 - 3);
                guard.check("halley algorithm", &h)?;
            }
        }
    }
    Ok(h)
}
