use std::path::PathBuf;

/// Failures of the scenario runner, grouped by the exit code they map to.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] qschrod_core::Error),
    #[error("{what} supports at most {max} qubits, got {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("{path}: {message}")]
    Config { path: String, message: String },
    #[error("unknown scenario `{0}` (try `qschrod list`)")]
    UnknownScenario(String),
    #[error("{what}: {detail}")]
    Invariant { what: &'static str, detail: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { path: path.into(), message: message.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// 1 configuration, 2 numerical invariant, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant { .. } => 2,
            Error::Io { .. } | Error::Json(_) => 3,
            Error::Core(_) | Error::TooLarge { .. } | Error::Config { .. } | Error::UnknownScenario(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
