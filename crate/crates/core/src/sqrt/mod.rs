//! Square-root iterations (Newton, Halley, Householder of any order) and the
//! closed forms they are equal to.

mod halley;
mod householder;
mod newton;
mod trace;

use std::fmt;

use crate::error::{domain, Result};
use crate::numeric::{int_sqrt_nearest, BigFloat, BitGuard, ExactRational};

pub use halley::{halley, HalleyForm};
pub use householder::{householder, householder_step, phi, residual, slow_sequence, HouseholderForm};
pub use newton::{engel_partial, newton, taylor_hat, NewtonForm};
pub use trace::{convergence_order_estimate, Family, IterationTrace, MethodDescriptor, OrderEstimate};

/// Input to every square-root engine: `x`, a seed `r`, and the derived
/// `b = (x − r²)/2`, `M = (x + r²)/2` and `X = M/b`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtProblem {
    x: ExactRational,
    r: ExactRational,
    b: ExactRational,
    m: ExactRational,
    big_x: ExactRational,
    guard: BitGuard,
}

impl SqrtProblem {
    pub fn new(x: ExactRational, r: ExactRational) -> Result<Self> {
        if !x.is_positive() {
            return Err(domain!("x must be positive, got {x}"));
        }
        if !r.is_positive() {
            return Err(domain!("seed r must be positive, got {r}"));
        }
        let r2 = r.square();
        if r2 == x {
            return Err(domain!("seed r = {r} satisfies r² = x, so X = (x + r²)/(x − r²) is undefined"));
        }
        let b = (&x - &r2) / 2;
        let m = (&x + &r2) / 2;
        let big_x = &m / &b;
        Ok(SqrtProblem { x, r, b, m, big_x, guard: BitGuard::default() })
    }

    /// Seeds with the integer nearest to `√x`.
    pub fn with_default_seed(x: ExactRational) -> Result<Self> {
        let r = ExactRational::from_integer(int_sqrt_nearest(&x)?);
        Self::new(x, r)
    }

    pub fn with_guard(mut self, guard: BitGuard) -> Self {
        self.guard = guard;
        self
    }

    pub fn x(&self) -> &ExactRational {
        &self.x
    }

    pub fn r(&self) -> &ExactRational {
        &self.r
    }

    pub fn b(&self) -> &ExactRational {
        &self.b
    }

    pub fn m(&self) -> &ExactRational {
        &self.m
    }

    /// The Chebyshev argument `X = (x + r²)/(x − r²)`.
    pub fn big_x(&self) -> &ExactRational {
        &self.big_x
    }

    pub fn guard(&self) -> &BitGuard {
        &self.guard
    }

    /// Rough bit size of one power of `X`, for pre-flight guard estimates.
    fn unit_bits(&self) -> u64 {
        self.big_x.max_bits() + 1
    }

    /// `√x` at the given precision.
    pub fn reference_root(&self, precision: usize) -> BigFloat {
        BigFloat::from_rational(&self.x, precision + 64).sqrt().with_precision(precision)
    }
}

/// Result of an engine: exact for the rational forms, a float for the
/// cosine-product forms.
#[derive(Debug, Clone, PartialEq)]
pub enum RootValue {
    Exact(ExactRational),
    Float(BigFloat),
}

impl RootValue {
    pub fn exact(&self) -> Option<&ExactRational> {
        match self {
            RootValue::Exact(q) => Some(q),
            RootValue::Float(_) => None,
        }
    }

    pub fn into_exact(self) -> Option<ExactRational> {
        match self {
            RootValue::Exact(q) => Some(q),
            RootValue::Float(_) => None,
        }
    }

    pub fn to_bigfloat(&self, precision: usize) -> BigFloat {
        match self {
            RootValue::Exact(q) => BigFloat::from_rational(q, precision),
            RootValue::Float(f) => f.with_precision(precision),
        }
    }
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootValue::Exact(q) => write!(f, "{q}"),
            RootValue::Float(v) => write!(f, "{v}"),
        }
    }
}

/// `r · ∏ (X − cos(aπ/N)) / (X − cos(bπ/N))` over matching numerator and
/// denominator angle lists, in floating point.
fn cosine_product(
    prob: &SqrtProblem,
    numer_angles: impl IntoIterator<Item = u64>,
    denom_angles: impl IntoIterator<Item = u64>,
    n_angle: u64,
    precision: usize,
) -> BigFloat {
    let pi = BigFloat::pi(precision);
    let big_n = BigFloat::from_i64(n_angle as i64, precision);
    let x = BigFloat::from_rational(prob.big_x(), precision);
    let factor = |k: u64| {
        let angle = pi.mul(&BigFloat::from_i64(k as i64, precision)).div(&big_n);
        x.sub(&angle.cos())
    };
    let mut acc = BigFloat::from_rational(prob.r(), precision);
    for (a, b) in numer_angles.into_iter().zip(denom_angles) {
        acc = acc.mul(&factor(a)).div(&factor(b));
    }
    acc
}

/// `num / den`, treating a vanishing denominator as a broken invariant.
fn div_nonzero(num: &ExactRational, den: &ExactRational, what: &str) -> Result<ExactRational> {
    num.checked_div(den)
        .map_err(|_| crate::Error::Internal(format!("{what}: denominator vanished")))
}
