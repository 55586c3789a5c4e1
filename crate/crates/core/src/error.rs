use thiserror::Error;

/// Errors raised by the algebra, cohomology and expression layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("index error: {0}")]
    Index(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation too large: {unknowns} unknowns exceeds cap {cap}")]
    TooLarge { unknowns: usize, cap: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

impl WeylError {
    pub(crate) fn index(msg: impl Into<String>) -> Self {
        WeylError::Index(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        WeylError::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        WeylError::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, WeylError>;
