use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ill-formed structure: {0}")]
    IllFormed(String),

    /// A search or enumeration would exceed the named cap.
    #[error("resource cap `{cap}` exceeded: {detail}")]
    Resource { cap: String, detail: String },

    /// A precondition that depends on a computed verdict (e.g. the Segal
    /// condition) does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }

    pub(crate) fn ill_formed(message: impl Into<String>) -> Self {
        Error::IllFormed(message.into())
    }

    pub(crate) fn resource(cap: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Resource { cap: cap.into(), detail: detail.into() }
    }
}
