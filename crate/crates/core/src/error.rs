//! Error type shared across the crate.

/// Errors produced by family construction, integration, and metric analysis.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Malformed input: dimension mismatch, out-of-range parameter, bad option.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Request outside the mathematical domain of the operation
    /// (e.g. no normalizable on-shell solution below dim 3).
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not supported for this input
    /// (e.g. Monte Carlo sampling without a product structure).
    #[error("not supported: {0}")]
    Capability(String),

    /// An adaptive integration ran out of subdivisions before reaching the
    /// requested tolerance. Carries the best estimate obtained so far.
    #[error("integration did not converge: {detail} (best {best:e}, error {error_estimate:e})")]
    Convergence {
        best: f64,
        error_estimate: f64,
        detail: String,
    },

    /// A metric matrix could not be inverted.
    #[error("singular metric: {0}")]
    Singular(String),

    /// A Wick rotation would produce imaginary cross terms.
    #[error("rotation inconsistency: {0}")]
    RotationInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }
}
