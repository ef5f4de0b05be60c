use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one CLI exit class:
/// `NotFound` is a search that ran to its limit, everything else is bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("outside the supported domain: {0}")]
    Domain(String),
    #[error("no solution found below search limit {limit}")]
    NotFound { limit: u64 },
    #[error("curve order for p = {p}, k = {k} could not be certified")]
    Uncertified { p: u64, k: u64 },
    #[error("malformed census file, line {line}: {msg}")]
    Parse { line: u64, msg: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
