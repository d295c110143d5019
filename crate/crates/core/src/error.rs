use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("malformed rational literal {0:?}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix: no nonzero pivot in column {column}")]
    Singular { column: usize },

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("invalid exponent set: {0}")]
    Validation(String),

    #[error("Cauchy pole: x[{i}] == y[{j}]")]
    Pole { i: usize, j: usize },

    #[error("moment unavailable: {0}")]
    Capability(String),

    #[error("expected {expected} samples, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("unknown operator {0:?}")]
    UnknownOperator(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
