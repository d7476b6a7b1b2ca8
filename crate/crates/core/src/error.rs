//! Error types shared by every module.

use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("bad label {label} at line {line}")]
    Label { line: usize, label: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    Size {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("unresolved identification: {0}")]
    Unresolved(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }

    pub(crate) fn pre(reason: impl Into<String>) -> Self {
        Error::Precondition(reason.into())
    }
}
