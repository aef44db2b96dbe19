use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Arbitrary-precision signed rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Builds `numer / denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(domain!("zero denominator"));
        }
        Ok(ExactRational(BigRational::new(numer.into(), denom)))
    }

    /// Small-integer convenience constructor; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }

    /// Re-reduces the stored fraction. A no-op for every value this type can
    /// hold; exposed so the lowest-terms invariant can be checked externally.
    pub fn normalized(&self) -> Self {
        let (n, d) = (self.numer(), self.denom());
        let g = n.gcd(d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        ExactRational(BigRational::new_raw(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain!("reciprocal of zero"));
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(domain!("division by zero"));
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRational(num_traits::pow::Pow::pow(&self.0, exp))
    }

    pub fn square(&self) -> Self {
        ExactRational(&self.0 * &self.0)
    }

    /// Largest integer ≤ self.
    pub fn floor_int(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Bit length of the numerator magnitude.
    pub fn numer_bits(&self) -> u64 {
        self.numer().bits()
    }

    /// Bit length of the larger of numerator and denominator.
    pub fn max_bits(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for ExactRational {
    /// `p/q`, or just `p` when the value is an integer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactRational({self})")
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p`, `p/q`, and plain decimals such as `-12.375`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || domain!("cannot parse rational from {s:?}");
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return ExactRational::new(n, d);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (neg, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
            if !all_digits(int_digits)
                || !all_digits(frac_part)
                || (int_digits.is_empty() && frac_part.is_empty())
            {
                return Err(bad());
            }
            let digits = format!("{int_digits}{frac_part}");
            let mut numer = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
            if neg {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
            return ExactRational::new(numer, denom);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(ExactRational::from_integer(n))
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigRational> for ExactRational {
    fn from(q: BigRational) -> Self {
        ExactRational(q)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<i64> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: i64) -> ExactRational {
                ExactRational((&self.0).$method(BigRational::from_integer(rhs.into())))
            }
        }
        impl $trait<i64> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: i64) -> ExactRational {
                ExactRational(self.0.$method(BigRational::from_integer(rhs.into())))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor like the primitive types; use `checked_div` when
// the divisor is data-dependent.
forward_binop!(Div, div);

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, q| acc + q)
    }
}

impl Product for ExactRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::one(), |acc, q| acc * q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructs_in_lowest_terms() {
        let q = ExactRational::new(6, -4).unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(q.normalized(), q);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(ExactRational::new(1, 0), Err(Error::Domain(_))));
        assert!(ExactRational::one().checked_div(&ExactRational::zero()).is_err());
        assert!(ExactRational::zero().recip().is_err());
    }

    #[test]
    fn parses_common_notations() {
        let p = |s: &str| s.parse::<ExactRational>();
        assert_eq!(p("51").unwrap(), ExactRational::from(51));
        assert_eq!(p("-3/6").unwrap(), ExactRational::ratio(-1, 2));
        assert_eq!(p("1.25").unwrap(), ExactRational::ratio(5, 4));
        assert_eq!(p("-.5").unwrap(), ExactRational::ratio(-1, 2));
        assert!(p("1.2.3").is_err());
        assert!(p("abc").is_err());
        assert!(p("1/0").is_err());
        assert!(p(".").is_err());
    }

    #[test]
    fn display_drops_unit_denominator() {
        assert_eq!(ExactRational::ratio(50, 7).to_string(), "50/7");
        assert_eq!(ExactRational::ratio(14, 2).to_string(), "7");
        assert_eq!(ExactRational::ratio(-1, 3).to_string(), "-1/3");
    }

    #[test]
    fn floor_rounds_toward_negative_infinity() {
        assert_eq!(ExactRational::ratio(-7, 2).floor_int(), BigInt::from(-4));
        assert_eq!(ExactRational::ratio(7, 2).floor_int(), BigInt::from(3));
        assert_eq!(ExactRational::ratio(-3, 1).floor_int(), BigInt::from(-3));
    }
}
