//! Self-verification suites: the identity registry plus cross-checks between
//! independently computed forms. Checks run in parallel; results come back in
//! a fixed order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::chebyshev::{registry_sweep, IdentityCase};
use crate::dyck::{
    dyck_count, dyck_enumerate, f_d, g_d, sym_dyck_count, sym_dyck_enumerate, FMode, GMode, SeriesApprox,
    SeriesFamily,
};
use crate::error::{usage, Error, Result};
use crate::nthroot::{pth_root_iterate, PthRootProblem};
use crate::numeric::ExactRational;
use crate::sqrt::{
    halley, householder, newton, phi, HalleyForm, HouseholderForm, NewtonForm, RootValue, SqrtProblem,
};

/// Largest identity degree swept by [`Suite::Identities`].
pub const IDENTITY_DEGREE_CAP: u64 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Identities,
    SqrtForms,
    Monomial,
    NthRoot,
    Dyck,
    Series,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Identities,
        Suite::SqrtForms,
        Suite::Monomial,
        Suite::NthRoot,
        Suite::Dyck,
        Suite::Series,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::SqrtForms => "sqrt-forms",
            Suite::Monomial => "monomial",
            Suite::NthRoot => "nthroot",
            Suite::Dyck => "dyck",
            Suite::Series => "series",
        }
    }

    /// `"all"` or a comma-separated list of suite names.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out: Vec<Suite> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn checks(self) -> Vec<Check> {
        let xs = [2i64, 51, 1_000_003];
        match self {
            Suite::Identities => registry_sweep(IDENTITY_DEGREE_CAP).into_iter().map(Check::Identity).collect(),
            Suite::SqrtForms => {
                let mut v = Vec::new();
                for x in xs {
                    for n in 1..=4 {
                        v.push(Check::NewtonHalley { x, n });
                        for d in 1..=6 {
                            v.push(Check::SqrtForms { x, d, n });
                        }
                    }
                }
                v
            }
            Suite::Monomial => {
                let mut v = Vec::new();
                for x in [2i64, 51] {
                    for precision in [128, 256] {
                        for d in 1..=4 {
                            for n in 1..=2 {
                                v.push(Check::Monomial { x, d, n, precision });
                            }
                        }
                    }
                }
                v
            }
            Suite::NthRoot => {
                let mut v = Vec::new();
                for d in 1..=3 {
                    for n in 1..=2 {
                        v.push(Check::NthRootReduction { d, n });
                    }
                }
                v
            }
            Suite::Dyck => {
                let mut v = Vec::new();
                for n in 0..=10 {
                    for h in 0..=10 {
                        v.push(Check::DyckCount { n, h });
                    }
                }
                v
            }
            Suite::Series => {
                let mut v = Vec::new();
                for d in 1..=6 {
                    for x in [(3, 2), (2, 1), (10, 1)] {
                        v.push(Check::Series { d, x });
                    }
                    v.push(Check::PhiLink { d });
                }
                v
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|su| su.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| usage!("unknown suite {s:?}; expected one of identities, sqrt-forms, monomial, nthroot, dyck, series, all"))
    }
}

/// One independent verification item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Identity(IdentityCase),
    /// Every applicable exact Householder form equals the iterate.
    SqrtForms { x: i64, d: u32, n: u32 },
    /// Every Newton and Halley form equals its iterate.
    NewtonHalley { x: i64, n: u32 },
    /// Cosine-product forms match the exact value within `2^{−precision+32}`.
    Monomial { x: i64, d: u32, n: u32, precision: usize },
    /// The `p = 2` pth-root step equals the square-root Householder step.
    NthRootReduction { d: u32, n: u32 },
    /// Recurrence counts equal brute-force enumeration.
    DyckCount { n: u64, h: u64 },
    /// Series partial sums stay within the tail bound of the exact value.
    Series { d: u32, x: (i64, i64) },
    /// Algorithm 4's correction equals `g_d` (even `d`) or `−f_d` (odd `d`).
    PhiLink { d: u32 },
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Identity(c) => write!(f, "{c}"),
            Check::SqrtForms { x, d, n } => write!(f, "householder-forms(x={x},d={d},n={n})"),
            Check::NewtonHalley { x, n } => write!(f, "newton-halley-forms(x={x},n={n})"),
            Check::Monomial { x, d, n, precision } => {
                write!(f, "monomial(x={x},d={d},n={n},prec={precision})")
            }
            Check::NthRootReduction { d, n } => write!(f, "pth-root-p2(x=51,d={d},n={n})"),
            Check::DyckCount { n, h } => write!(f, "dyck-enumeration(n={n},h={h})"),
            Check::Series { d, x: (a, b) } => write!(f, "series(d={d},x={a}/{b})"),
            Check::PhiLink { d } => write!(f, "phi-link(d={d})"),
        }
    }
}

fn sqrt_problem(x: i64) -> Result<SqrtProblem> {
    SqrtProblem::with_default_seed(ExactRational::from(x))
}

fn exact(v: RootValue) -> Result<ExactRational> {
    v.into_exact().ok_or_else(|| Error::Internal("expected an exact value".into()))
}

impl Check {
    pub fn run(&self) -> Result<bool> {
        match self {
            Check::Identity(c) => c.verify(IDENTITY_DEGREE_CAP),
            Check::SqrtForms { x, d, n } => {
                let prob = sqrt_problem(*x)?;
                let it = exact(householder(&prob, *d, *n, HouseholderForm::Iterate)?)?;
                for form in HouseholderForm::EXACT.into_iter().filter(|f| f.is_applicable(*d, *n)) {
                    if exact(householder(&prob, *d, *n, form)?)? != it {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Check::NewtonHalley { x, n } => {
                let prob = sqrt_problem(*x)?;
                let it = exact(newton(&prob, *n, NewtonForm::Iterate)?)?;
                for form in [NewtonForm::Sum, NewtonForm::Ratio, NewtonForm::SecondKind, NewtonForm::Algorithm1] {
                    if exact(newton(&prob, *n, form)?)? != it {
                        return Ok(false);
                    }
                }
                let h = halley(&prob, *n, HalleyForm::Iterate)?;
                Ok(halley(&prob, *n, HalleyForm::Product)? == h && halley(&prob, *n, HalleyForm::Algorithm)? == h)
            }
            Check::Monomial { x, d, n, precision } => {
                let prob = sqrt_problem(*x)?;
                let tol = 32 - *precision as i64;
                let it = exact(householder(&prob, *d, *n, HouseholderForm::Iterate)?)?;
                let reference = crate::BigFloat::from_rational(&it, *precision);
                let mono = householder(&prob, *d, *n, HouseholderForm::Monomial { precision: *precision })?
                    .to_bigfloat(*precision);
                let mut ok = mono.close_to(&reference, -tol);
                if *d == 1 {
                    let nm = newton(&prob, *n, NewtonForm::Monomial { precision: *precision })?.to_bigfloat(*precision);
                    let exact_n = crate::BigFloat::from_rational(&exact(newton(&prob, *n, NewtonForm::Iterate)?)?, *precision);
                    ok &= nm.close_to(&exact_n, -tol);
                }
                Ok(ok)
            }
            Check::NthRootReduction { d, n } => {
                let sq = sqrt_problem(51)?;
                let pth = PthRootProblem::new(ExactRational::from(51), 2, sq.r().clone(), *d)?;
                Ok(pth_root_iterate(&pth, *n)? == exact(householder(&sq, *d, *n, HouseholderForm::Iterate)?)?)
            }
            Check::DyckCount { n, h } => {
                let plain = dyck_enumerate(*n, *h)?.len();
                let sym = sym_dyck_enumerate(*n, *h)?.len();
                Ok(dyck_count(*n, *h) == plain.into() && sym_dyck_count(*n as i64, *h)? == sym.into())
            }
            Check::Series { d, x: (a, b) } => {
                let x = ExactRational::ratio(*a, *b);
                let f_exact = exact(f_d(*d, &x, FMode::Exact)?)?;
                let g_exact = exact(g_d(*d, &x, GMode::Exact)?)?;
                for k in 0..=12 {
                    for (family, target) in [(SeriesFamily::F, &f_exact), (SeriesFamily::G, &g_exact)] {
                        let s = SeriesApprox::new(family, *d, k)?;
                        let err = target - s.partial_sum(&x)?;
                        if err.is_negative() || err > s.tail_bound(&x)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(exact(g_d(*d, &x, GMode::Recurrence)?)? == g_exact
                    && exact(g_d(*d, &x, GMode::SumU)?)? == g_exact)
            }
            Check::PhiLink { d } => {
                let x = ExactRational::ratio(7, 3);
                let want = if d % 2 == 0 {
                    exact(g_d(*d, &x, GMode::Exact)?)?
                } else {
                    -exact(f_d(*d, &x, FMode::Exact)?)?
                };
                Ok(phi(*d, &x)? == want)
            }
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: Suite,
    pub ordinal: usize,
    pub label: String,
    /// `Ok(passed)`, or the error that stopped the check.
    pub outcome: std::result::Result<bool, Error>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Ok(true))
    }
}

/// Runs every check of the given suites in parallel, ordered by suite and
/// then by position within the suite.
pub fn run_suites(suites: &[Suite]) -> Vec<CheckResult> {
    let work: Vec<(Suite, usize, Check)> = suites
        .iter()
        .flat_map(|&s| s.checks().into_iter().enumerate().map(move |(i, c)| (s, i, c)))
        .collect();
    let mut results: Vec<CheckResult> = work
        .into_par_iter()
        .map(|(suite, ordinal, check)| CheckResult {
            suite,
            ordinal,
            label: check.to_string(),
            outcome: check.run(),
        })
        .collect();
    results.sort_by_key(|r| (r.suite, r.ordinal));
    results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("all").unwrap().len(), 6);
        assert_eq!(Suite::parse_list("dyck,identities,dyck").unwrap(), vec![Suite::Identities, Suite::Dyck]);
        assert!(matches!(Suite::parse_list("nope"), Err(Error::Usage(_))));
    }

    #[test]
    fn small_suites_pass_in_order() {
        let results = run_suites(&[Suite::NthRoot, Suite::Series]);
        assert!(results.iter().all(CheckResult::passed), "{results:?}");
        let keys: Vec<(Suite, usize)> = results.iter().map(|r| (r.suite, r.ordinal)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
