use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("truncation too low: need dimension {needed}, data is truncated at {have}")]
    TruncationTooLow { needed: usize, have: usize },

    #[error("not a quasicategory up to dimension {dim}: unfillable inner horn {witness}")]
    NotQuasicategory { dim: usize, witness: String },

    #[error("not Kan up to dimension {dim}: unfillable horn {witness}")]
    NotKan { dim: usize, witness: String },

    #[error("fuel exhausted after {rounds} rounds: {detail}")]
    FuelExhausted { rounds: usize, detail: String },

    #[error("not decidable: {0}")]
    NotDecidable(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
