use thiserror::Error;

/// Errors raised by the computation kernel and the data loaders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("indeterminate sets differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("no value assigned to indeterminate `{0}`")]
    MissingAssignment(String),
    #[error("pole at k = {0}")]
    Pole(String),
    #[error("critical level k = -{0}")]
    CriticalLevel(usize),
    #[error("usage: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inhomogeneous vector: {0}")]
    Inhomogeneous(String),
    #[error("dimension cap {0} exceeded")]
    DimensionCap(usize),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error("data integrity: {0}")]
    DataIntegrity(String),
    #[error("io: {0}")]
    Io(String),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
