use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge (estimate {estimate}, error {error:e})")]
    Convergence { estimate: Complex64, error: f64 },

    #[error("matrix is singular to working precision at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("conversion failed at frequency index {index}: {reason}")]
    Conversion { index: usize, reason: String },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("grid mismatch: {0}")]
    Mismatch(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("matrix fill failed at entry ({m}, {n}): {reason}")]
    Fill { m: usize, n: usize, reason: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
