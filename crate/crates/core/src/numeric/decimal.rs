use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::ExactRational;

/// Renders `q` with exactly `digits` fractional digits, rounding half to even.
///
/// A value that rounds to zero is printed without a minus sign.
pub fn to_decimal(q: &ExactRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled_num = q.numer().abs() * &scale;
    let (mut int, rem) = scaled_num.div_rem(q.denom());
    let twice = rem * 2u32;
    if twice > *q.denom() || (twice == *q.denom() && int.is_odd()) {
        int += 1u32;
    }
    let negative = q.is_negative() && !int.is_zero();
    let mut body = int.to_string();
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if negative {
        body.insert(0, '-');
    }
    body
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(to_decimal(&ExactRational::ratio(50, 7), 4), "7.1429");
        assert_eq!(to_decimal(&ExactRational::from(7), 2), "7.00");
        assert_eq!(to_decimal(&ExactRational::ratio(1, 2), 0), "0");
    }

    #[test]
    fn half_even_ties() {
        assert_eq!(to_decimal(&ExactRational::ratio(3, 2), 0), "2");
        assert_eq!(to_decimal(&ExactRational::ratio(5, 2), 0), "2");
        assert_eq!(to_decimal(&ExactRational::ratio(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&ExactRational::ratio(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&ExactRational::ratio(-5, 2), 0), "-2");
    }

    #[test]
    fn small_and_negative_values() {
        assert_eq!(to_decimal(&ExactRational::ratio(1, 700), 5), "0.00143");
        assert_eq!(to_decimal(&ExactRational::ratio(-1, 3), 3), "-0.333");
        assert_eq!(to_decimal(&ExactRational::ratio(-1, 3000), 2), "0.00");
        assert_eq!(to_decimal(&ExactRational::ratio(-2, 3), 0), "-1");
    }
}
