use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division is not exact in the Laurent polynomial ring")]
    NonExactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no denominator vector")]
    ZeroPolynomial,
    #[error("input has a nonpositive coefficient")]
    NonPositiveInput,
    #[error("zero denominator in Y-seed mutation")]
    ZeroDenominator,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("integer overflow in matrix mutation")]
    Overflow,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by malformed user input rather than the engine.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
