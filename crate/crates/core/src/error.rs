use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("relation side is empty")]
    EmptyRelationSide,

    #[error("presentation is not complemented: pair ({x}, {y}) has {count} relations")]
    NotComplemented { x: String, y: String, count: usize },

    #[error("resource limit exceeded: {what} > {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("braid word has a negative crossing at position {0}")]
    NonPositiveBraid(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("structure is not verified: {0}")]
    NotVerified(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn limit(what: &'static str, limit: usize) -> Self {
        Error::ResourceLimit { what, limit }
    }

    /// True for `ResourceLimit`, which callers map to a distinct exit status.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
