//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinimalPoly(String),
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("extensions over an extension field are not supported")]
    NestedExtension,
    #[error("reducible modulus: {0}")]
    ReducibleModulus(String),
    #[error("non-invertible series: divisor has zero constant term")]
    NonInvertibleSeries,
    #[error("pole at the origin is not a series")]
    PoleAtOrigin,
    #[error("factors not coprime: {0}")]
    NotCoprime(String),
    #[error("index {index} out of range for {len} factors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("Bezout identity r*q + s*p = 1 does not hold")]
    BezoutViolated,
    #[error("improper input: {0}")]
    ImproperFraction(String),
    #[error("invalid denominator: {0}")]
    InvalidDenominator(String),
    #[error("shifted factor has a nonzero constant term: the generator is not a root")]
    NotARoot,
    #[error("singular linear system: input factors were not coprime")]
    SingularSystem,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
