use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("not a congruence: {0}")]
    NotACongruence(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} cap exceeded (limit {limit}); {progress}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        progress: String,
    },

    #[error("unassigned variable v{0}")]
    UnassignedVariable(usize),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
