use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series, product, or quadrature did not settle within its caps.
    #[error("no convergence in {what} after {terms} terms (last magnitude {last:e})")]
    Convergence {
        what: String,
        terms: usize,
        last: f64,
    },
    /// A structural expectation failed (missing zero, bad table, ...).
    #[error("structural error: {0}")]
    Structural(String),
}

pub type QResult<T> = Result<T, QError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> QResult<T> {
    Err(QError::Domain(msg.into()))
}
