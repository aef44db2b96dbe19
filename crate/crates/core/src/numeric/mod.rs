//! Exact rationals, integer helpers, decimal rendering, operand-size guard,
//! and the binary floating type used by the cosine product forms.

mod bigfloat;
mod decimal;
mod guard;
mod integer;
mod rational;

pub use bigfloat::{precision_for_digits, BigFloat, MIN_PRECISION};
pub use decimal::to_decimal;
pub use guard::{checked_pow, BitGuard, DEFAULT_GUARD_BITS};
pub use integer::{
    binomial, binomial_int, bit_len, catalan, central_binomial, int_root_rounded,
    int_sqrt_nearest,
};
pub use rational::ExactRational;
