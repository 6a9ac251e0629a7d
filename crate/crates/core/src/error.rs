use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("malformed substitution: {0}")]
    Substitution(String),

    #[error("signature error: {0}")]
    Signature(String),

    #[error("object mismatch: {0}")]
    Mismatch(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("family precondition violated: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    TooLarge(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
