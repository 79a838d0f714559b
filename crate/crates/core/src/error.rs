use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid arity: {0}")]
    InvalidArity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    /// An exact search ran out of nodes. The question is undecided, not answered.
    #[error("search budget of {max_nodes} nodes exhausted")]
    BudgetExhausted { max_nodes: u64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no edge of the matching absorbs {set:?}")]
    NoAbsorber { set: Vec<usize> },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("exact search supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
