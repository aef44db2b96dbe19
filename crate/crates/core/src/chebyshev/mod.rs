//! Chebyshev polynomials of the first (T), second (U), third (V) and fourth
//! (W) kinds.
//!
//! All four share the recurrence `p(k+1) = 2X·p(k) − p(k−1)` and differ only
//! in their degree-one seed: `X`, `2X`, `2X − 1` and `2X + 1`.

mod identities;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{usage, Error, Result};
use crate::numeric::ExactRational;
use crate::poly::IntPoly;

pub use identities::{
    registry_sweep, verify_identity, verify_identity_tag, verify_identity_with, Identity,
    IdentityCase, Strategy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChebKind {
    FirstT,
    SecondU,
    ThirdV,
    FourthW,
}

impl ChebKind {
    pub const ALL: [ChebKind; 4] = [
        ChebKind::FirstT,
        ChebKind::SecondU,
        ChebKind::ThirdV,
        ChebKind::FourthW,
    ];

    /// `(a, c)` such that the degree-one member is `a·X + c`.
    fn seed(self) -> (i64, i64) {
        match self {
            ChebKind::FirstT => (1, 0),
            ChebKind::SecondU => (2, 0),
            ChebKind::ThirdV => (2, -1),
            ChebKind::FourthW => (2, 1),
        }
    }

    fn slot(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            ChebKind::FirstT => 'T',
            ChebKind::SecondU => 'U',
            ChebKind::ThirdV => 'V',
            ChebKind::FourthW => 'W',
        }
    }
}

impl fmt::Display for ChebKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for ChebKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T" | "FIRST" => Ok(ChebKind::FirstT),
            "U" | "SECOND" => Ok(ChebKind::SecondU),
            "V" | "THIRD" => Ok(ChebKind::ThirdV),
            "W" | "FOURTH" => Ok(ChebKind::FourthW),
            _ => Err(usage!("unknown Chebyshev kind {s:?}")),
        }
    }
}

/// A single Chebyshev polynomial with its exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebPoly {
    pub kind: ChebKind,
    pub index: usize,
    pub coeffs: IntPoly,
}

impl ChebPoly {
    pub fn new(kind: ChebKind, index: usize) -> Self {
        ChebPoly { kind, index, coeffs: coeffs(kind, index) }
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs.eval(x)
    }
}

impl fmt::Display for ChebPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}(X) = {}", self.kind, self.index, self.coeffs)
    }
}

/// Indices below this bound are served from a shared table built once.
const TABLE_LEN: usize = 260;

fn table() -> &'static [Vec<IntPoly>; 4] {
    static TABLE: OnceLock<[Vec<IntPoly>; 4]> = OnceLock::new();
    TABLE.get_or_init(|| ChebKind::ALL.map(|kind| build_coeffs(kind, TABLE_LEN - 1)))
}

fn build_coeffs(kind: ChebKind, up_to: usize) -> Vec<IntPoly> {
    let (a, c) = kind.seed();
    let two_x = IntPoly::from_i64s(&[0, 2]);
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(IntPoly::one());
    if up_to >= 1 {
        out.push(IntPoly::from_i64s(&[c, a]));
    }
    for k in 2..=up_to {
        let next = &(&two_x * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out
}

/// Exact coefficients of the `k`-th polynomial of the given kind.
pub fn coeffs(kind: ChebKind, k: usize) -> IntPoly {
    if k < TABLE_LEN {
        table()[kind.slot()][k].clone()
    } else {
        build_coeffs(kind, k).pop().expect("non-empty")
    }
}

/// `p_k(X)` by the three-term recurrence, carried out on the integer
/// numerators of `X = a/c` so no intermediate gcds are needed:
/// with `P_k = c^k·p_k(a/c)`, `P_{k+1} = 2a·P_k − c²·P_{k−1}`.
pub fn eval(kind: ChebKind, k: usize, x: &ExactRational) -> ExactRational {
    let a = x.numer();
    let c = x.denom();
    let (sa, sc) = kind.seed();
    if k == 0 {
        return ExactRational::one();
    }
    let two_a = a * 2u32;
    let c2 = c * c;
    let mut prev = BigInt::one();
    let mut cur = a * sa + c * sc;
    for _ in 1..k {
        let next = &two_a * &cur - &c2 * &prev;
        prev = cur;
        cur = next;
    }
    let den = num_traits::pow(c.clone(), k);
    ExactRational::new(cur, den).expect("positive denominator")
}

/// `T_{2^j}(X)` by `j` applications of `T_{2m} = 2T_m² − 1`.
pub fn eval_t_pow2(j: u32, x: &ExactRational) -> ExactRational {
    let mut t = x.clone();
    for _ in 0..j {
        t = t.square() * 2 - 1;
    }
    t
}

/// `T_{3^j}(X)` by `j` applications of `T_{3m} = T_m·(4T_m² − 3)`.
pub fn eval_t_pow3(j: u32, x: &ExactRational) -> ExactRational {
    let mut t = x.clone();
    for _ in 0..j {
        t = &t * (t.square() * 4 - 3);
    }
    t
}
