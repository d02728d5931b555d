use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn overflow(what: impl Into<String>) -> Error {
    Error::Overflow(what.into())
}
