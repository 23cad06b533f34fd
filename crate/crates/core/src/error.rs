use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("index {index} outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix is not invertible over GF(2)")]
    NotInvertible,

    #[error("resource budget exceeded: {what} (limit {limit})")]
    Budget { what: String, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("result is not hermitian: coefficient of {witness} is {coeff}")]
    NonHermitian { witness: String, coeff: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(context: &'static str, expected: usize, found: usize) -> Self {
        Error::Dimension {
            context,
            expected,
            found,
        }
    }

    pub(crate) fn budget(what: impl Into<String>, limit: usize) -> Self {
        Error::Budget {
            what: what.into(),
            limit,
        }
    }
}
