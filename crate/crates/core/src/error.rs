use thiserror::Error;

/// Everything that can go wrong while building or computing with numerals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grosspower nesting depth {depth} exceeds the limit {limit}")]
    DepthExceeded { depth: usize, limit: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("inverse of a {terms}-term numeral does not terminate; use divide with a cutoff")]
    InexactInverse { terms: usize },

    #[error("value is not integer-valued: {0}")]
    NotIntegerValued(String),

    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("system is singular: {0}")]
    SingularSystem(String),

    #[error("probability does not terminate within the cutoff")]
    InexactProbability,

    #[error("invalid probability: {0}")]
    InvalidProbability(String),

    #[error("long division did not reach the cutoff within {0} steps")]
    DivisionStepLimit(usize),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            message: message.into(),
        }
    }

    /// Short stable category name, used as a machine-readable prefix by front ends.
    pub fn category(&self) -> &'static str {
        match self {
            Error::DepthExceeded { .. } => "depth",
            Error::DivisionByZero => "division-by-zero",
            Error::InexactInverse { .. } => "inexact-inverse",
            Error::NotIntegerValued(_) => "not-integer",
            Error::Syntax { .. } => "syntax",
            Error::SingularSystem(_) => "singular",
            Error::InexactProbability | Error::InvalidProbability(_) => "probability",
            Error::DivisionStepLimit(_) => "step-limit",
            Error::Schema(_) => "schema",
            Error::InvalidArgument(_) => "argument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
