use thiserror::Error;

/// Failure classes shared by every module.
///
/// The CLI maps these onto exit codes: `Domain` → 1, `Usage` → 2,
/// `Resource` → 3, `Internal` → 4.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates a mathematical precondition (x ≤ 0, r² = x, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The request is malformed (incompatible form, n = 0 for a closed form, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// A size guard tripped before or during evaluation.
    #[error("resource error: {0}")]
    Resource(String),
    /// An invariant that should be unreachable was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
macro_rules! resource {
    ($($arg:tt)*) => { $crate::error::Error::Resource(format!($($arg)*)) };
}
pub(crate) use {domain, resource, usage};
