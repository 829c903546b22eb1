use thiserror::Error;

/// Errors raised by ideal arithmetic and the invariant computations built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent vector has length {got}, ring has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("exponent overflow")]
    Overflow,

    /// The operation would produce the whole ring, which is not a representable ideal.
    #[error("result is the unit ideal")]
    UnitIdeal,

    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("ideal is not polymatroidal")]
    NotPolymatroidal,

    #[error("ideal has no linear quotients in reverse lexicographic order")]
    NotLinearQuotients,

    #[error("{what}: cost {cost} exceeds budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        cost: u128,
        limit: u128,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
