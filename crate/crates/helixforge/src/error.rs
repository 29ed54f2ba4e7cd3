use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] helixforge_core::Error),
    #[error("IoFailure: {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("ToleranceExceeded: max deviation {max_deviation} exceeds allowed {allowed}")]
    ToleranceExceeded { max_deviation: f64, allowed: f64 },
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::IoFailure {
            path: path.into(),
            source,
        }
    }
}
