use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures that are not mathematical verdicts. A failed cotorsion or tilting
/// check is reported through a [`crate::report::CheckReport`], never here.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (shapes, names, mismatched algebras).
    #[error("input error: {0}")]
    Input(String),

    /// Structurally valid input that fails a mathematical precondition, e.g. a
    /// relation ideal that is not admissible.
    #[error("validation error: {0}")]
    Validation(String),

    /// A search guard was exceeded before a definite answer was reached.
    #[error("resource guard `{guard}` exceeded: {detail}")]
    Resource { guard: String, detail: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn resource(guard: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Resource {
            guard: guard.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code used by the CLI: 2 for input/validation problems,
    /// 3 for exhausted guards.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }
}
