use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not in A = {{0, ±1, ±2, ±phi, ±phibar}}")]
    NotInA(String),
    #[error("index {index} out of range (expected {expected})")]
    OutOfRange { index: usize, expected: &'static str },
    #[error("total degree {degree} exceeds the supported maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("polynomial involves variable {0}, expected a univariate polynomial in the other")]
    WrongVariable(char),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("conjugacy class mismatch: {0}")]
    ClassMismatch(String),
    #[error("multiplicity m[{k},{i}] = {value} is not a nonnegative integer")]
    NonIntegralMultiplicity { k: usize, i: usize, value: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
