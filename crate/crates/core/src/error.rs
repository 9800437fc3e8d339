use thiserror::Error;

/// Errors shared across the whole engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("endpoint mismatch: {0}")]
    Endpoint(String),
    #[error("base categories differ: {0}")]
    BaseMismatch(String),
    #[error("unknown factorization system `{0}`")]
    UnknownSystem(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("truncation bound exceeded: {0}")]
    Truncation(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
