use thiserror::Error;

use crate::order::Chain;

/// Errors raised by constructors, validators and solvers.
///
/// Budget exhaustion in the solvers is usually reported through
/// [`crate::DimensionResult`] bounds rather than as an error; the exceptions
/// are the enumeration routines that have no bounds to report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("relation has a strict cycle through elements {a} and {b}")]
    Cycle { a: usize, b: usize },

    #[error("index {index} out of range for {n} elements")]
    Index { index: usize, n: usize },

    #[error("{what} would have {size} elements, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("chain budget of {budget} exceeded")]
    BudgetExceeded { budget: usize, partial: Vec<Chain> },

    #[error("triangle inequality fails on ({a}, {b}, {c}) by {excess:e}")]
    Metric {
        a: usize,
        b: usize,
        c: usize,
        excess: f64,
    },

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("coordinates are required for eps > 0")]
    NoCoordinates,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument { field: &'static str, reason: String },
}

impl Error {
    pub(crate) fn arg(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
