//! Registry of Chebyshev identities used by the closed forms, each checked
//! exactly either as a coefficient-vector equality or by exact evaluation on
//! more sample points than the identity's degree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{coeffs, eval, ChebKind};
use crate::error::{resource, usage, Error, Result};
use crate::numeric::ExactRational;
use crate::poly::IntPoly;

use ChebKind::{FirstT as T, FourthW as W, SecondU as U, ThirdV as V};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `2·T_n·T_m = T_{m+n} + T_{|m−n|}`
    ProdTT,
    /// `T_{2^{j+1}} = 2·T_{2^j}² − 1`
    DoubleT,
    /// `T_{2^N} = 2^N·X·∏_{j<N} T_{2^j} − Σ_{j=1..N} 2^{N−j}·∏_{k=j..N−1} T_{2^k}`, N ≥ 1
    Lemma1,
    /// `T_{2^N}² − 4^N·(X² − 1)·∏_{i<N} T_{2^i}² = 1`
    Lemma2,
    /// `U_{2n−1} = 2·T_n·U_{n−1}`, n ≥ 1
    USplit,
    /// `(X−1)·∏(2T_{3^{i−1}}+1)² + 3(X+1)·∏(2T_{3^{i−1}}−1)² = 2(2T_{3^n}+1)`
    HalleyA,
    /// `3(X−1)·∏(2T_{3^{i−1}}+1)² + (X+1)·∏(2T_{3^{i−1}}−1)² = 2(2T_{3^n}−1)`
    HalleyB,
    /// `T_n ∘ T_m = T_{n·m}`
    TCompose,
    /// `U_{nm−1} = U_{m−1}(T_n)·U_{n−1}`, n, m ≥ 1
    UFactor,
    /// `V_p − W_p = −2·U_{p−1}`, p ≥ 1
    VwGap,
    /// `T_{d+1} = X·U_d − U_{d−1}`, d ≥ 1
    TuLink,
    /// Squared half-integer second kind: `2(1+z)·U_{p−½}(z)² = W_p(z)²`,
    /// checked as `T_{2p+1} − 1 = (z − 1)·W_p²` using `U_{p−½}(z)² = (T_{2p+1}(z) − 1)/(2(z² − 1))`.
    HalfU,
    /// Squared half-integer first kind: `2·T_{p+½}(z)² = (1+z)·V_p(z)²`,
    /// checked as `T_{2p+1} + 1 = (z + 1)·V_p²` using `T_{p+½}(z)² = (T_{2p+1}(z) + 1)/2`.
    HalfT,
    /// `2·Σ_{k<d} U_k = g_d·U_d` with `g_d` cleared of its denominator, d ≥ 1.
    GSum,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::ProdTT,
        Identity::DoubleT,
        Identity::Lemma1,
        Identity::Lemma2,
        Identity::USplit,
        Identity::HalleyA,
        Identity::HalleyB,
        Identity::TCompose,
        Identity::UFactor,
        Identity::VwGap,
        Identity::TuLink,
        Identity::HalfU,
        Identity::HalfT,
        Identity::GSum,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Identity::ProdTT => "PROD_TT",
            Identity::DoubleT => "DOUBLE_T",
            Identity::Lemma1 => "LEMMA1",
            Identity::Lemma2 => "LEMMA2",
            Identity::USplit => "U_SPLIT",
            Identity::HalleyA => "HALLEY_A",
            Identity::HalleyB => "HALLEY_B",
            Identity::TCompose => "T_COMPOSE",
            Identity::UFactor => "U_FACTOR",
            Identity::VwGap => "VW_GAP",
            Identity::TuLink => "TU_LINK",
            Identity::HalfU => "HALF_U",
            Identity::HalfT => "HALF_T",
            Identity::GSum => "GSUM",
        }
    }

    /// Parameter names, in order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Identity::ProdTT | Identity::TCompose | Identity::UFactor => &["n", "m"],
            Identity::DoubleT => &["j"],
            Identity::Lemma1 | Identity::Lemma2 => &["N"],
            Identity::USplit | Identity::HalleyA | Identity::HalleyB => &["n"],
            Identity::VwGap | Identity::HalfU | Identity::HalfT => &["p"],
            Identity::TuLink | Identity::GSum => &["d"],
        }
    }

    fn min_param(self) -> u64 {
        match self {
            Identity::Lemma1
            | Identity::USplit
            | Identity::UFactor
            | Identity::VwGap
            | Identity::TuLink
            | Identity::GSum => 1,
            _ => 0,
        }
    }

    /// Largest polynomial degree appearing on either side.
    pub fn degree(self, params: &[u64]) -> Result<u64> {
        let names = self.params();
        if params.len() != names.len() {
            return Err(usage!(
                "{} takes {} parameter(s) ({}), got {}",
                self.tag(),
                names.len(),
                names.join(", "),
                params.len()
            ));
        }
        if let Some(bad) = params.iter().find(|&&v| v < self.min_param()) {
            return Err(usage!("{} needs parameters ≥ {}, got {bad}", self.tag(), self.min_param()));
        }
        let overflow = || resource!("{} degree overflows for {:?}", self.tag(), params);
        let pow = |b: u64, e: u64| -> Result<u64> {
            u32::try_from(e).ok().and_then(|e| b.checked_pow(e)).ok_or_else(overflow)
        };
        let p0 = params[0];
        Ok(match self {
            Identity::ProdTT => p0.checked_add(params[1]).ok_or_else(overflow)?,
            Identity::DoubleT => pow(2, p0 + 1)?,
            Identity::Lemma1 => pow(2, p0)?,
            Identity::Lemma2 => pow(2, p0 + 1)?,
            Identity::USplit => 2 * p0 - 1,
            Identity::HalleyA | Identity::HalleyB => pow(3, p0)?,
            Identity::TCompose => p0.checked_mul(params[1]).ok_or_else(overflow)?,
            Identity::UFactor => p0.checked_mul(params[1]).ok_or_else(overflow)? - 1,
            Identity::VwGap => p0,
            Identity::TuLink => p0 + 1,
            Identity::HalfU | Identity::HalfT => 2 * p0 + 1,
            Identity::GSum => p0 - 1 + p0.div_ceil(2),
        })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| usage!("unknown identity tag {s:?}"))
    }
}

/// How [`verify_identity_with`] compares the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Expand both sides to integer coefficient vectors.
    Coefficients,
    /// Evaluate both sides exactly at `degree_cap + 1` distinct rationals.
    Sampling,
}

/// One identity with concrete parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdentityCase {
    pub identity: Identity,
    pub params: Vec<u64>,
}

impl IdentityCase {
    pub fn degree(&self) -> Result<u64> {
        self.identity.degree(&self.params)
    }

    pub fn verify(&self, degree_cap: u64) -> Result<bool> {
        verify_identity(self.identity, &self.params, degree_cap)
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self
            .identity
            .params()
            .iter()
            .zip(&self.params)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        write!(f, "{}({})", self.identity, args.join(","))
    }
}

/// Arithmetic needed to state the identities, over either polynomials or
/// rational sample points.
trait Algebra {
    type E: Clone + PartialEq;
    fn cheb(&self, kind: ChebKind, k: u64) -> Self::E;
    fn cheb_at(&self, kind: ChebKind, k: u64, arg: &Self::E) -> Self::E;
    fn x(&self) -> Self::E;
    fn int(&self, c: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn scale(&self, a: &Self::E, k: &BigInt) -> Self::E;

    fn prod(&self, items: impl IntoIterator<Item = Self::E>) -> Self::E {
        items.into_iter().fold(self.int(1), |acc, e| self.mul(&acc, &e))
    }
    fn sum(&self, items: impl IntoIterator<Item = Self::E>) -> Self::E {
        items.into_iter().fold(self.int(0), |acc, e| self.add(&acc, &e))
    }
    fn x_plus(&self, c: i64) -> Self::E {
        self.add(&self.x(), &self.int(c))
    }
}

struct PolyAlgebra;

impl Algebra for PolyAlgebra {
    type E = IntPoly;
    fn cheb(&self, kind: ChebKind, k: u64) -> IntPoly {
        coeffs(kind, k as usize)
    }
    fn cheb_at(&self, kind: ChebKind, k: u64, arg: &IntPoly) -> IntPoly {
        coeffs(kind, k as usize).compose(arg)
    }
    fn x(&self) -> IntPoly {
        IntPoly::x()
    }
    fn int(&self, c: i64) -> IntPoly {
        IntPoly::constant(c)
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a + b
    }
    fn sub(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a - b
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a * b
    }
    fn scale(&self, a: &IntPoly, k: &BigInt) -> IntPoly {
        a.scale(k)
    }
}

struct PointAlgebra(ExactRational);

impl Algebra for PointAlgebra {
    type E = ExactRational;
    fn cheb(&self, kind: ChebKind, k: u64) -> ExactRational {
        eval(kind, k as usize, &self.0)
    }
    fn cheb_at(&self, kind: ChebKind, k: u64, arg: &ExactRational) -> ExactRational {
        eval(kind, k as usize, arg)
    }
    fn x(&self) -> ExactRational {
        self.0.clone()
    }
    fn int(&self, c: i64) -> ExactRational {
        ExactRational::from(c)
    }
    fn add(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        a + b
    }
    fn sub(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        a - b
    }
    fn mul(&self, a: &ExactRational, b: &ExactRational) -> ExactRational {
        a * b
    }
    fn scale(&self, a: &ExactRational, k: &BigInt) -> ExactRational {
        a * ExactRational::from_integer(k.clone())
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::from(1u8) << e as usize
}

/// Left- and right-hand sides of an identity. Parameters must already be
/// validated by [`Identity::degree`].
fn sides<A: Algebra>(alg: &A, id: Identity, params: &[u64]) -> (A::E, A::E) {
    let p0 = params[0];
    match id {
        Identity::ProdTT => {
            let (n, m) = (p0, params[1]);
            let lhs = alg.scale(&alg.mul(&alg.cheb(T, n), &alg.cheb(T, m)), &BigInt::from(2));
            let rhs = alg.add(&alg.cheb(T, n + m), &alg.cheb(T, n.abs_diff(m)));
            (lhs, rhs)
        }
        Identity::DoubleT => {
            let j = p0;
            let half = alg.cheb(T, 1 << j);
            let rhs = alg.sub(&alg.scale(&alg.mul(&half, &half), &BigInt::from(2)), &alg.int(1));
            (alg.cheb(T, 1 << (j + 1)), rhs)
        }
        Identity::Lemma1 => {
            let n = p0;
            let t = |j: u64| alg.cheb(T, 1 << j);
            let lead = alg.scale(&alg.mul(&alg.x(), &alg.prod((0..n).map(t))), &pow2(n));
            let tail = alg.sum((1..=n).map(|j| alg.scale(&alg.prod((j..n).map(t)), &pow2(n - j))));
            (alg.cheb(T, 1 << n), alg.sub(&lead, &tail))
        }
        Identity::Lemma2 => {
            let n = p0;
            let top = alg.cheb(T, 1 << n);
            let x2m1 = alg.sub(&alg.mul(&alg.x(), &alg.x()), &alg.int(1));
            let prod_sq = alg.prod((0..n).map(|i| {
                let t = alg.cheb(T, 1 << i);
                alg.mul(&t, &t)
            }));
            let lhs = alg.sub(&alg.mul(&top, &top), &alg.scale(&alg.mul(&x2m1, &prod_sq), &pow2(2 * n)));
            (lhs, alg.int(1))
        }
        Identity::USplit => {
            let n = p0;
            let rhs = alg.scale(&alg.mul(&alg.cheb(T, n), &alg.cheb(U, n - 1)), &BigInt::from(2));
            (alg.cheb(U, 2 * n - 1), rhs)
        }
        Identity::HalleyA | Identity::HalleyB => {
            let n = p0;
            let factor = |sign: i64| {
                alg.prod((1..=n).map(|i| {
                    let t3 = alg.cheb(T, 3u64.pow((i - 1) as u32));
                    let f = alg.add(&alg.scale(&t3, &BigInt::from(2)), &alg.int(sign));
                    alg.mul(&f, &f)
                }))
            };
            let (plus, minus) = (factor(1), factor(-1));
            let (a, b, sign) = if id == Identity::HalleyA { (1, 3, 1) } else { (3, 1, -1) };
            let lhs = alg.add(
                &alg.scale(&alg.mul(&alg.x_plus(-1), &plus), &BigInt::from(a)),
                &alg.scale(&alg.mul(&alg.x_plus(1), &minus), &BigInt::from(b)),
            );
            let t3n = alg.cheb(T, 3u64.pow(n as u32));
            let rhs = alg.scale(
                &alg.add(&alg.scale(&t3n, &BigInt::from(2)), &alg.int(sign)),
                &BigInt::from(2),
            );
            (lhs, rhs)
        }
        Identity::TCompose => {
            let (n, m) = (p0, params[1]);
            (alg.cheb_at(T, n, &alg.cheb(T, m)), alg.cheb(T, n * m))
        }
        Identity::UFactor => {
            let (n, m) = (p0, params[1]);
            let rhs = alg.mul(&alg.cheb_at(U, m - 1, &alg.cheb(T, n)), &alg.cheb(U, n - 1));
            (alg.cheb(U, n * m - 1), rhs)
        }
        Identity::VwGap => {
            let p = p0;
            let lhs = alg.sub(&alg.cheb(V, p), &alg.cheb(W, p));
            (lhs, alg.scale(&alg.cheb(U, p - 1), &BigInt::from(-2)))
        }
        Identity::TuLink => {
            let d = p0;
            let rhs = alg.sub(&alg.mul(&alg.x(), &alg.cheb(U, d)), &alg.cheb(U, d - 1));
            (alg.cheb(T, d + 1), rhs)
        }
        Identity::HalfU | Identity::HalfT => {
            let p = p0;
            let (sign, kind) = if id == Identity::HalfU { (-1, W) } else { (1, V) };
            let lhs = alg.add(&alg.cheb(T, 2 * p + 1), &alg.int(sign));
            let q = alg.cheb(kind, p);
            (lhs, alg.mul(&alg.x_plus(sign), &alg.mul(&q, &q)))
        }
        Identity::GSum => {
            let d = p0;
            let (num, den) = if d % 2 == 0 {
                (alg.scale(&alg.cheb(U, d / 2 - 1), &BigInt::from(2)), alg.cheb(V, d / 2))
            } else {
                (alg.cheb(W, (d - 1) / 2), alg.cheb(T, (d + 1) / 2))
            };
            let sum_u = alg.scale(&alg.sum((0..d).map(|k| alg.cheb(U, k))), &BigInt::from(2));
            (alg.mul(&sum_u, &den), alg.mul(&num, &alg.cheb(U, d)))
        }
    }
}

/// `degree_cap + 1` distinct sample points spread over `[−1, 1]`.
fn sample_points(degree_cap: u64) -> Vec<ExactRational> {
    if degree_cap == 0 {
        return vec![ExactRational::ratio(1, 3)];
    }
    let cap = degree_cap as i64;
    (0..=cap).map(|i| ExactRational::ratio(2 * i - cap, cap)).collect()
}

/// Checks an identity by exact coefficient comparison.
pub fn verify_identity(id: Identity, params: &[u64], degree_cap: u64) -> Result<bool> {
    verify_identity_with(id, params, degree_cap, Strategy::Coefficients)
}

/// Tag-addressed variant; an unknown tag is a usage error.
pub fn verify_identity_tag(tag: &str, params: &[u64], degree_cap: u64) -> Result<bool> {
    verify_identity(tag.parse()?, params, degree_cap)
}

pub fn verify_identity_with(
    id: Identity,
    params: &[u64],
    degree_cap: u64,
    strategy: Strategy,
) -> Result<bool> {
    let degree = id.degree(params)?;
    if degree > degree_cap {
        return Err(usage!(
            "{} with {:?} has degree {degree}, above the cap {degree_cap}",
            id.tag(),
            params
        ));
    }
    Ok(match strategy {
        Strategy::Coefficients => {
            let (lhs, rhs) = sides(&PolyAlgebra, id, params);
            lhs == rhs
        }
        Strategy::Sampling => sample_points(degree_cap).into_iter().all(|x| {
            let (lhs, rhs) = sides(&PointAlgebra(x), id, params);
            lhs == rhs
        }),
    })
}

/// Every admissible parameter choice whose degree is at most `max_degree`.
/// Symmetric two-parameter identities (`PROD_TT`) list `n ≤ m` only.
pub fn registry_sweep(max_degree: u64) -> Vec<IdentityCase> {
    let mut out = Vec::new();
    for id in Identity::ALL {
        let lo = id.min_param();
        let fits = |params: &[u64]| id.degree(params).is_ok_and(|d| d <= max_degree);
        if id.params().len() == 1 {
            let mut v = lo;
            while fits(&[v]) {
                out.push(IdentityCase { identity: id, params: vec![v] });
                v += 1;
            }
        } else {
            let mut n = lo;
            // A zero argument to T_COMPOSE keeps the degree at 0, so the
            // parameters themselves are bounded as well.
            while n <= max_degree && fits(&[n, lo]) {
                let mut m = if id == Identity::ProdTT { n } else { lo };
                while m <= max_degree && fits(&[n, m]) {
                    out.push(IdentityCase { identity: id, params: vec![n, m] });
                    m += 1;
                }
                n += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_examples() {
        assert!(verify_identity(Identity::DoubleT, &[3], 16).unwrap());
        assert!(verify_identity(Identity::Lemma2, &[0], 4).unwrap());
        assert!(verify_identity(Identity::VwGap, &[4], 8).unwrap());
    }

    #[test]
    fn unknown_tag_and_bad_params_are_usage_errors() {
        assert!(matches!(verify_identity_tag("NOPE", &[1], 8), Err(Error::Usage(_))));
        assert!(matches!(verify_identity_tag("lemma1", &[0], 8), Err(Error::Usage(_))));
        assert!(matches!(verify_identity(Identity::ProdTT, &[1], 8), Err(Error::Usage(_))));
        assert!(matches!(verify_identity(Identity::DoubleT, &[4], 16), Err(Error::Usage(_))));
        assert!(verify_identity_tag("u_factor", &[3, 4], 11).unwrap());
    }

    #[test]
    fn composition_is_multiplicative_not_additive() {
        // T_2 ∘ T_3 has degree 6, so it cannot equal T_5.
        let (lhs, _) = sides(&PolyAlgebra, Identity::TCompose, &[2, 3]);
        assert_eq!(lhs, coeffs(T, 6));
        assert_ne!(lhs, coeffs(T, 5));
    }

    #[test]
    fn a_broken_identity_is_detected_by_both_strategies() {
        // Perturb: compare V_p − W_p with +2U_{p−1} instead of −2U_{p−1}.
        let (lhs, rhs) = sides(&PolyAlgebra, Identity::VwGap, &[3]);
        assert_ne!(lhs, -&rhs);
        let x = ExactRational::ratio(1, 3);
        let (l, r) = sides(&PointAlgebra(x), Identity::VwGap, &[3]);
        assert_ne!(l, -r);
    }

    #[test]
    fn strategies_agree_on_a_sample_of_the_registry() {
        for case in registry_sweep(24) {
            let cap = case.degree().unwrap();
            let by_coeff = verify_identity_with(case.identity, &case.params, cap, Strategy::Coefficients);
            let by_sample = verify_identity_with(case.identity, &case.params, cap, Strategy::Sampling);
            assert_eq!(by_coeff.unwrap(), true, "{case}");
            assert_eq!(by_sample.unwrap(), true, "{case}");
        }
    }

    #[test]
    fn sweep_covers_every_identity() {
        let cases = registry_sweep(128);
        for id in Identity::ALL {
            assert!(cases.iter().any(|c| c.identity == id), "{id}");
        }
        assert!(cases.iter().all(|c| c.degree().unwrap() <= 128));
        assert!(cases.contains(&IdentityCase { identity: Identity::HalleyA, params: vec![4] }));
        assert!(cases.contains(&IdentityCase { identity: Identity::Lemma1, params: vec![7] }));
        assert!(cases.contains(&IdentityCase { identity: Identity::TCompose, params: vec![128, 1] }));
    }

    #[test]
    fn half_integer_identities_through_p8() {
        for p in 0..=8 {
            assert!(verify_identity(Identity::HalfU, &[p], 17).unwrap());
            assert!(verify_identity(Identity::HalfT, &[p], 17).unwrap());
        }
    }

    #[test]
    fn case_display() {
        let c = IdentityCase { identity: Identity::UFactor, params: vec![2, 5] };
        assert_eq!(c.to_string(), "U_FACTOR(n=2,m=5)");
    }
}
