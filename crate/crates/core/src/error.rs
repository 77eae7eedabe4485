use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke an operation's precondition (dimension mismatch, bad index, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Rejected input geometry or configuration.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Argument outside the domain of a formula (e.g. a pole).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact routine refused to run because the input exceeds its caps.
    #[error("refused: {0}")]
    Refused(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
