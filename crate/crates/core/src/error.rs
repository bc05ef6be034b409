use thiserror::Error;

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input or an unmet precondition (exit 1).
    User,
    /// A bound guaranteed by the underlying argument failed: an implementation bug (exit 2).
    Internal,
    /// File access or parsing (exit 3).
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order exceeds the cap of {cap} elements")]
    SizeLimit { cap: usize },

    #[error("invalid group table: {0}")]
    Validation(String),

    #[error("subgroup is not normal: conjugate {conjugate} of member {member} by {by} leaves it")]
    NotNormal {
        member: usize,
        by: usize,
        conjugate: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    #[error("{0}")]
    Usage(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::LemmaViolation(_) => ErrorKind::Internal,
            Error::Parse { .. } | Error::Io(_) | Error::Json(_) => ErrorKind::Io,
            _ => ErrorKind::User,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::User => 1,
            ErrorKind::Internal => 2,
            ErrorKind::Io => 3,
        }
    }

    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        Error::LemmaViolation(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
