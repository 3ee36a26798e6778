use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants map onto the CLI exit codes: `SizeLimit` is a resource cap,
/// everything else is either bad input or an internal consistency failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("size limit exceeded: {what} ({actual} > {limit})")]
    SizeLimit {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("invalid action: {0}")]
    Action(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("catalog entry `{id}`: {source}")]
    Entry {
        id: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn size(what: &'static str, actual: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::SizeLimit {
            what,
            actual: actual.into(),
            limit: limit.into(),
        }
    }

    /// True when the error (or the error it wraps) is a resource cap.
    pub fn is_size_limit(&self) -> bool {
        match self {
            Error::SizeLimit { .. } => true,
            Error::Entry { source, .. } => source.is_size_limit(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
