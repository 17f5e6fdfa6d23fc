use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("value {0} is outside the allowed range [1, {1}]")]
    OutOfRange(u64, u64),

    #[error("duplicate value {0} in set")]
    DuplicateValue(u64),

    #[error("set has {0} elements, oracle cap is {1}")]
    OracleCapExceeded(usize, usize),

    #[error("search cap exceeded: {0}")]
    SearchCapExceeded(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
