use thiserror::Error;

/// Errors raised by the library. Each variant maps to a stable `kind` string
/// used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("inhomogeneous form: expected degree {expected}, offending monomials {offending:?}")]
    Inhomogeneous {
        expected: usize,
        offending: Vec<String>,
    },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("field error: {0}")]
    Field(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("undefined input: {0}")]
    Undefined(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::Inhomogeneous { .. } => "parse",
            Error::Degree(_) => "degree",
            Error::Field(_) => "field",
            Error::Constraint(_) | Error::Undefined(_) => "constraint",
            Error::SearchExhausted(_) => "search-exhausted",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
