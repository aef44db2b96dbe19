//! Exact square and pth root iterations and their Chebyshev closed forms.
//!
//! Newton, Halley and general Householder iterations for `√x` are computed in
//! exact rational arithmetic, alongside every closed form they are equal to
//! (first- to fourth-kind Chebyshev ratios, products, binomial sums and
//! cosine products). Dyck-path counts supply the power-series expansions of
//! the correction terms.

pub mod chebyshev;
pub mod dyck;
pub mod error;
pub mod nthroot;
pub mod numeric;
pub mod poly;
pub mod sqrt;
pub mod suite;

pub use error::{Error, Result};
pub use numeric::{BigFloat, BitGuard, ExactRational};
