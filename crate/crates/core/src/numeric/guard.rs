use super::ExactRational;
use crate::error::{resource, Result};

/// Default cap on the bit size of any numerator or denominator: 2²⁰ bits.
pub const DEFAULT_GUARD_BITS: u64 = 1 << 20;

/// Operand-size guard. Iterates of order-d methods grow like `(d+1)^n`, so
/// every engine checks its estimated and actual operand sizes against this
/// cap and fails with [`crate::Error::Resource`] instead of exhausting memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitGuard {
    pub max_bits: u64,
}

impl Default for BitGuard {
    fn default() -> Self {
        BitGuard { max_bits: DEFAULT_GUARD_BITS }
    }
}

impl BitGuard {
    pub fn new(max_bits: u64) -> Self {
        BitGuard { max_bits }
    }

    pub fn unlimited() -> Self {
        BitGuard { max_bits: u64::MAX }
    }

    pub fn check(&self, what: &str, q: &ExactRational) -> Result<()> {
        let bits = q.max_bits();
        if bits > self.max_bits {
            return Err(resource!(
                "{what} needs {bits} bits, above the {} bit guard",
                self.max_bits
            ));
        }
        Ok(())
    }

    /// Rejects a computation whose result is a rational function of degree
    /// `degree` in inputs of about `unit_bits` bits each, before doing any work.
    pub fn check_degree(&self, what: &str, degree: u64, unit_bits: u64) -> Result<()> {
        match degree.checked_mul(unit_bits.max(1)) {
            Some(est) if est <= self.max_bits => Ok(()),
            Some(est) => Err(resource!(
                "{what} would need about {est} bits, above the {} bit guard",
                self.max_bits
            )),
            None => Err(resource!("{what}: degree {degree} overflows the size estimate")),
        }
    }
}

/// `base^exp` as u64, or a resource error on overflow.
pub fn checked_pow(base: u64, exp: u32, what: &str) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| resource!("{what}: {base}^{exp} overflows"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trips_on_large_operand() {
        let g = BitGuard::new(8);
        assert!(g.check("v", &ExactRational::from(255)).is_ok());
        let err = g.check("v", &ExactRational::from(256)).unwrap_err();
        assert!(matches!(err, crate::Error::Resource(_)));
    }

    #[test]
    fn degree_estimate() {
        let g = BitGuard::default();
        assert!(g.check_degree("h", 1000, 10).is_ok());
        assert!(g.check_degree("h", 1 << 20, 2).is_err());
        assert!(g.check_degree("h", u64::MAX, 3).is_err());
        assert!(checked_pow(7, 30, "p").is_err());
        assert_eq!(checked_pow(7, 3, "p").unwrap(), 343);
    }
}
