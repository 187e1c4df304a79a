use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("slope incompatible with stable coefficients: {0}")]
    Incompatible(String),
    #[error("enumeration budget exhausted after {0} steps")]
    Budget(u64),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("not a changemaker V-sequence")]
    NotChangemaker,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
