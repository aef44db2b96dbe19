use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::ExactRational;
use crate::error::{domain, Result};

/// Positive integer `r` minimizing `|r² − x|`, ties broken toward the smaller
/// candidate. Never returns less than 1.
pub fn int_sqrt_nearest(x: &ExactRational) -> Result<BigInt> {
    if !x.is_positive() {
        return Err(domain!("int_sqrt_nearest needs x > 0, got {x}"));
    }
    // floor(sqrt(floor(x))) == floor(sqrt(x)); the nearest square is at lo or lo + 1.
    let lo = x.floor_int().sqrt();
    let hi = &lo + 1u32;
    let dist = |r: &BigInt| (ExactRational::from_integer(r * r) - x).abs();
    let best = if dist(&hi) < dist(&lo) { hi } else { lo };
    Ok(if best.is_zero() { BigInt::one() } else { best })
}

/// `round(x^(1/p))` (half rounds up), clamped to at least 1. Computed exactly:
/// with `f = floor(x^(1/p))`, the rounded root is `f + 1` iff `(f + ½)^p ≤ x`.
pub fn int_root_rounded(x: &ExactRational, p: u32) -> Result<BigInt> {
    if !x.is_positive() {
        return Err(domain!("root seed needs x > 0, got {x}"));
    }
    if p == 0 {
        return Err(domain!("root degree must be positive"));
    }
    let f = x.floor_int().nth_root(p);
    let half_up = ExactRational::from_integer(f.clone()) + ExactRational::ratio(1, 2);
    let r = if half_up.pow(p) <= *x { f + 1u32 } else { f };
    Ok(if r.is_zero() { BigInt::one() } else { r })
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Signed convenience wrapper over [`binomial`].
pub fn binomial_int(n: u64, k: i64) -> BigInt {
    BigInt::from(binomial(n, k))
}

/// Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n as i64) / (n + 1)
}

/// `C(n, ⌊n/2⌋)`, the count of symmetric Dyck paths of semilength `n` with no
/// height restriction.
pub fn central_binomial(n: u64) -> BigUint {
    binomial(n, (n / 2) as i64)
}

/// Bit length of `|n|`.
pub fn bit_len(n: &BigInt) -> u64 {
    n.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactRational {
        ExactRational::from(n)
    }

    #[test]
    fn nearest_integer_root_examples() {
        assert_eq!(int_sqrt_nearest(&q(51)).unwrap(), BigInt::from(7));
        assert_eq!(int_sqrt_nearest(&q(1)).unwrap(), BigInt::from(1));
        assert_eq!(int_sqrt_nearest(&q(56)).unwrap(), BigInt::from(7));
        assert_eq!(int_sqrt_nearest(&q(57)).unwrap(), BigInt::from(8));
        assert_eq!(int_sqrt_nearest(&ExactRational::ratio(1, 10)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn nearest_root_tie_goes_down() {
        // |49 − 56.5| = |64 − 56.5| = 7.5
        let x = ExactRational::ratio(113, 2);
        assert_eq!(int_sqrt_nearest(&x).unwrap(), BigInt::from(7));
    }

    #[test]
    fn nearest_root_rejects_non_positive() {
        assert!(int_sqrt_nearest(&q(0)).is_err());
        assert!(int_sqrt_nearest(&q(-4)).is_err());
    }

    #[test]
    fn rounded_pth_root() {
        assert_eq!(int_root_rounded(&q(8), 3).unwrap(), BigInt::from(2));
        assert_eq!(int_root_rounded(&q(2), 3).unwrap(), BigInt::from(1));
        // 3.5³ = 42.875
        assert_eq!(int_root_rounded(&q(42), 3).unwrap(), BigInt::from(3));
        assert_eq!(int_root_rounded(&q(43), 3).unwrap(), BigInt::from(4));
        assert_eq!(int_root_rounded(&ExactRational::ratio(1, 100), 2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(8, 3), BigUint::from(56u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(3, -1), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![BigUint::one()];
        for n in 1..=40u64 {
            let mut next = vec![BigUint::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as i64), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn catalan_and_central_binomial() {
        let cat: Vec<u32> = vec![1, 1, 2, 5, 14, 42, 132];
        for (n, c) in cat.into_iter().enumerate() {
            assert_eq!(catalan(n as u64), BigUint::from(c));
        }
        let cen: Vec<u32> = vec![1, 1, 2, 3, 6, 10, 20];
        for (n, c) in cen.into_iter().enumerate() {
            assert_eq!(central_binomial(n as u64), BigUint::from(c));
        }
    }
}
