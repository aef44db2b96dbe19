use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{Consts, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::ExactRational;

/// Smallest precision accepted, in bits.
pub const MIN_PRECISION: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision for a requested number of decimal digits: 4 bits per
/// digit plus 32 guard bits, never below [`MIN_PRECISION`].
pub fn precision_for_digits(digits: usize) -> usize {
    (4 * digits + 32).max(MIN_PRECISION)
}

/// Binary floating-point number at a fixed working precision. Every
/// arithmetic result is correctly rounded (half to even) to that precision.
///
/// Precisions are rounded up to a multiple of the 64-bit limb size.
#[derive(Clone)]
pub struct BigFloat {
    inner: astro_float::BigFloat,
    precision: usize,
}

fn normalize_precision(p: usize) -> usize {
    let p = p.max(MIN_PRECISION);
    p.div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE
}

/// Exact float holding the integer `n`, with just enough limbs.
fn exact_from_biguint(n: &BigUint, sign: Sign) -> astro_float::BigFloat {
    if n.is_zero() {
        return astro_float::BigFloat::from_word(0, MIN_PRECISION);
    }
    let words: Vec<Word> = n.to_u64_digits().into_iter().map(|w| w as Word).collect();
    let e = (words.len() * WORD_BIT_SIZE) as i32;
    astro_float::BigFloat::from_words(&words, sign, e)
}

impl BigFloat {
    fn wrap(inner: astro_float::BigFloat, precision: usize) -> Self {
        BigFloat { inner, precision }
    }

    pub fn zero(precision: usize) -> Self {
        let p = normalize_precision(precision);
        Self::wrap(astro_float::BigFloat::from_word(0, p), p)
    }

    pub fn from_i64(n: i64, precision: usize) -> Self {
        Self::from_rational(&ExactRational::from(n), precision)
    }

    /// Correctly rounded image of an exact rational.
    pub fn from_rational(q: &ExactRational, precision: usize) -> Self {
        let p = normalize_precision(precision);
        if q.is_zero() {
            return Self::zero(p);
        }
        let sign = if q.is_negative() { Sign::Neg } else { Sign::Pos };
        let num = exact_from_biguint(q.numer().magnitude(), sign);
        let den = exact_from_biguint(q.denom().magnitude(), Sign::Pos);
        Self::wrap(num.div(&den, p, RM), p)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Same value re-rounded to another precision.
    pub fn with_precision(&self, precision: usize) -> Self {
        let p = normalize_precision(precision);
        let mut inner = self.inner.clone();
        inner.set_precision(p, RM).expect("valid precision");
        Self::wrap(inner, p)
    }

    pub fn pi(precision: usize) -> Self {
        let p = normalize_precision(precision);
        Self::wrap(with_consts(|cc| cc.pi(p, RM)), p)
    }

    fn joint(&self, rhs: &Self) -> usize {
        self.precision.max(rhs.precision)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.joint(rhs);
        Self::wrap(self.inner.add(&rhs.inner, p, RM), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.joint(rhs);
        Self::wrap(self.inner.sub(&rhs.inner, p, RM), p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.joint(rhs);
        Self::wrap(self.inner.mul(&rhs.inner, p, RM), p)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.joint(rhs);
        Self::wrap(self.inner.div(&rhs.inner, p, RM), p)
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.inner.neg(), self.precision)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.inner.abs(), self.precision)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.inner.sqrt(self.precision, RM), self.precision)
    }

    pub fn cos(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.inner.cos(p, RM, cc)), p)
    }

    pub fn ln(&self) -> Self {
        let p = self.precision;
        Self::wrap(with_consts(|cc| self.inner.ln(p, RM, cc)), p)
    }

    /// `x^(1/n)` for positive `x`.
    pub fn nth_root(&self, n: u32) -> Self {
        let p = self.precision;
        let exp = Self::from_rational(&ExactRational::ratio(1, n as i64), p);
        Self::wrap(with_consts(|cc| self.inner.pow(&exp.inner, p, RM, cc)), p)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.inner.is_nan() && !self.inner.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.inner.is_negative()
    }

    /// Binary exponent `e` with `2^(e−1) ≤ |self| < 2^e`; `None` for zero or
    /// non-finite values.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() || !self.is_finite() {
            return None;
        }
        self.inner.exponent().map(i64::from)
    }

    /// Exact dyadic rational equal to this float.
    pub fn to_rational(&self) -> ExactRational {
        let Some((words, _, sign, e, _)) = self.inner.as_raw_parts() else {
            return ExactRational::zero();
        };
        let mag = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| {
                    let w = *w as u64;
                    [w as u32, (w >> 32) as u32]
                })
                .collect::<Vec<u32>>(),
        );
        if mag.is_zero() {
            return ExactRational::zero();
        }
        let shift = i64::from(e) - (words.len() * WORD_BIT_SIZE) as i64;
        let mut n = BigInt::from(mag);
        if sign == Sign::Neg {
            n = -n;
        }
        if shift >= 0 {
            ExactRational::from_integer(n << shift as usize)
        } else {
            ExactRational::new(n, BigInt::one() << (-shift) as usize).expect("nonzero")
        }
    }

    pub fn to_f64(&self) -> f64 {
        if !self.is_finite() {
            return f64::NAN;
        }
        self.to_rational().to_f64()
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.4142e-3`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if !self.is_finite() {
            return "NaN".to_string();
        }
        let q = self.to_rational();
        if q.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let mag = q.abs();
        // Decimal exponent from the binary one, corrected by at most one step.
        let bin_exp = self.exponent().unwrap_or(0);
        let mut e10 = ((bin_exp - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let ten = ExactRational::from(10);
        let pow10 = |k: i64| -> ExactRational {
            if k >= 0 {
                ten.pow(k as u32)
            } else {
                ten.pow((-k) as u32).recip().expect("nonzero")
            }
        };
        while mag >= pow10(e10 + 1) {
            e10 += 1;
        }
        while mag < pow10(e10) {
            e10 -= 1;
        }
        let scaled = &mag / &pow10(e10);
        let mut digits = super::to_decimal(&scaled, sig - 1);
        if digits.starts_with("10") {
            e10 += 1;
            digits = super::to_decimal(&(&mag / &pow10(e10)), sig - 1);
        }
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}{digits}e{e10}")
    }

    /// `|self − other| ≤ 2^(−k) · max(1, |other|)`.
    pub fn close_to(&self, other: &Self, k: i64) -> bool {
        let diff = self.sub(other).to_rational().abs();
        let scale = other.to_rational().abs().max(ExactRational::one());
        let tol = if k >= 0 {
            ExactRational::new(1, BigInt::one() << k as usize).expect("nonzero")
        } else {
            ExactRational::from_integer(BigInt::one() << (-k) as usize)
        };
        diff <= tol * scale
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.inner.cmp(&other.inner).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, {} bits)", self.to_sci_string(20), self.precision)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.precision as f64 * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_sci_string(digits.max(1)))
    }
}
