use std::fmt;

use super::{householder_step, SqrtProblem};
use crate::error::{domain, Result};
use crate::numeric::{BigFloat, ExactRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Newton,
    Halley,
    Householder,
    PthRoot,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Newton => "newton",
            Family::Halley => "halley",
            Family::Householder => "householder",
            Family::PthRoot => "pth-root",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDescriptor {
    pub family: Family,
    /// Householder order; the method converges with order `d + 1`.
    pub d: u32,
    pub form: String,
}

impl fmt::Display for MethodDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(d={}, {})", self.family, self.d, self.form)
    }
}

/// Iterates `H₀, H₁, …` of one method, optionally with `|Hᵢ − root|`.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub method: MethodDescriptor,
    pub values: Vec<ExactRational>,
    pub errors: Option<Vec<BigFloat>>,
}

impl IterationTrace {
    pub fn new(method: MethodDescriptor, values: Vec<ExactRational>) -> Self {
        IterationTrace { method, values, errors: None }
    }

    /// `H₀ = r` through `Hₙ` of the order-`d` square-root iteration.
    pub fn sqrt(prob: &SqrtProblem, d: u32, n: u32) -> Result<Self> {
        if d == 0 {
            return Err(crate::error::usage!("Householder order d must be at least 1"));
        }
        let family = match d {
            1 => Family::Newton,
            2 => Family::Halley,
            _ => Family::Householder,
        };
        let mut values = vec![prob.r().clone()];
        for _ in 0..n {
            let next = householder_step(prob.x(), values.last().expect("seeded"), d)?;
            prob.guard().check("trace", &next)?;
            values.push(next);
        }
        let method = MethodDescriptor { family, d, form: "Iterate".into() };
        Ok(Self::new(method, values))
    }

    /// Fills `errors` with `|Hᵢ − reference|` at the reference's precision.
    pub fn with_errors(mut self, reference: &BigFloat) -> Self {
        self.errors = Some(errors_against(&self.values, reference));
        self
    }
}

fn errors_against(values: &[ExactRational], reference: &BigFloat) -> Vec<BigFloat> {
    let prec = reference.precision();
    values
        .iter()
        .map(|v| BigFloat::from_rational(v, prec).sub(reference).abs())
        .collect()
}

/// Outcome of [`convergence_order_estimate`].
#[derive(Debug, Clone)]
pub struct OrderEstimate {
    /// `ln ε_{i+1} / ln ε_i` for the pair below.
    pub estimate: BigFloat,
    pub pair: (usize, usize),
    /// First iterate whose relative error is below the working resolution, if any.
    pub early_exact: Option<usize>,
}

/// Empirical convergence order `ln ε_{i+1} / ln ε_i` from the last pair of
/// consecutive iterates whose relative errors `εᵢ = |Hᵢ − root|/|root|` are
/// both resolvable, below 1, and strictly decreasing.
///
/// Relative errors keep the estimate independent of the root's magnitude,
/// which matters when only early, still moderately large errors are
/// resolvable. A relative error under `2^{−(prec−16)}` counts as exact; it
/// ends the admissible range and is reported in `early_exact`.
pub fn convergence_order_estimate(trace: &IterationTrace, reference: &BigFloat) -> Result<OrderEstimate> {
    if trace.values.len() < 3 {
        return Err(domain!("order estimate needs at least 3 iterates, got {}", trace.values.len()));
    }
    if reference.is_zero() {
        return Err(domain!("order estimate needs a nonzero reference root"));
    }
    let prec = reference.precision();
    let scale = reference.abs();
    let errors: Vec<BigFloat> = errors_against(&trace.values, reference)
        .into_iter()
        .map(|e| e.div(&scale))
        .collect();
    let resolution = BigFloat::from_rational(
        &ExactRational::new(1, num_bigint::BigInt::from(1u8) << (prec - 16)).expect("nonzero"),
        prec,
    );
    let early_exact = errors.iter().position(|e| *e <= resolution);
    let usable = early_exact.unwrap_or(errors.len());
    let one = BigFloat::from_i64(1, prec);
    let pair = (1..usable)
        .rev()
        .map(|i| (i - 1, i))
        .find(|&(a, b)| errors[b] < errors[a] && errors[a] < one)
        .ok_or_else(|| domain!("no pair of iterates with resolvable, decreasing errors"))?;
    let estimate = errors[pair.1].ln().div(&errors[pair.0].ln());
    Ok(OrderEstimate { estimate, pair, early_exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn band(d: u32, n: u32) -> (f64, OrderEstimate) {
        let p = SqrtProblem::new(ExactRational::from(51), ExactRational::from(7)).unwrap();
        let reference = p.reference_root(512);
        let trace = IterationTrace::sqrt(&p, d, n).unwrap();
        let est = convergence_order_estimate(&trace, &reference).unwrap();
        (est.estimate.to_f64(), est)
    }

    #[test]
    fn newton_is_quadratic() {
        let (e, est) = band(1, 4);
        assert!((1.5..=2.5).contains(&e), "{e}");
        assert_eq!(est.pair, (3, 4));
        assert_eq!(est.early_exact, None);
    }

    #[test]
    fn halley_is_cubic() {
        let (e, _) = band(2, 3);
        assert!((2.5..=3.5).contains(&e), "{e}");
    }

    #[test]
    fn order_four_reports_early_exact() {
        let (e, est) = band(4, 3);
        assert!((4.5..=5.5).contains(&e), "{e}");
        assert_eq!(est.early_exact, Some(3));
        assert_eq!(est.pair, (1, 2));
    }

    #[test]
    fn short_traces_are_rejected() {
        let p = SqrtProblem::new(ExactRational::from(51), ExactRational::from(7)).unwrap();
        let trace = IterationTrace::sqrt(&p, 1, 1).unwrap();
        assert!(convergence_order_estimate(&trace, &p.reference_root(256)).is_err());
    }

    #[test]
    fn errors_are_filled() {
        let p = SqrtProblem::new(ExactRational::from(2), ExactRational::from(1)).unwrap();
        let t = IterationTrace::sqrt(&p, 1, 3).unwrap().with_errors(&p.reference_root(128));
        let errs = t.errors.unwrap();
        assert_eq!(errs.len(), 4);
        assert!(errs.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(t.values[0], ExactRational::from(1));
    }
}
