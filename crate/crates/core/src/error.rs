//! Error type shared by every fallible operation in the crate.

/// Crate-wide error type.
///
/// Numerical routines fail loudly: an iteration that exhausts its budget or a
/// bracket that loses its sign change surfaces as [`Error::Convergence`]
/// rather than returning a silently wrong value.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {what}")]
    Domain { what: String },

    /// An iterative method failed to converge within its budget.
    #[error("convergence failure: {what}")]
    Convergence { what: String },

    /// Vector/matrix dimensions do not match.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// The operation is not available for this operator variant.
    #[error("unsupported operation: {what}")]
    Unsupported { what: String },
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    pub(crate) fn convergence(what: impl Into<String>) -> Self {
        Error::Convergence { what: what.into() }
    }

    pub(crate) fn unsupported(what: impl Into<String>) -> Self {
        Error::Unsupported { what: what.into() }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
