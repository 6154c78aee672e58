use thiserror::Error;

/// Errors produced by group construction and the class machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {what} = {actual} exceeds bound {limit}")]
    Resource {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
