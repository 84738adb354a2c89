use thiserror::Error;

/// Failures reported by evaluators and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation error: {what}: tail bound {bound:e} exceeds tolerance {tol:e} after {terms} terms")]
    Truncation {
        what: &'static str,
        terms: usize,
        bound: f64,
        tol: f64,
    },

    #[error("accuracy error: {what}: error bound {bound:e} exceeds tolerance {tol:e}")]
    Accuracy { what: &'static str, bound: f64, tol: f64 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
