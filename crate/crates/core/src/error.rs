use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input that is structurally well-formed but violates a precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A configured cap on output size or search effort was exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// An internal invariant failed; indicates corrupted input or a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
