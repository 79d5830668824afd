use thiserror::Error;

/// Errors raised by the library's operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} must be positive")]
    NonPositive { what: &'static str },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} = {value} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("case {case} does not admit n = {n}: {reason}")]
    Inadmissible { case: u8, n: u64, reason: String },

    #[error("event B has probability zero for case {case}, n = {n}")]
    ImpossibleEvent { case: u8, n: u64 },

    #[error("malformed cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
