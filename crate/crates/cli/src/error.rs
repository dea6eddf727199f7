use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Config { path: PathBuf, line: usize, message: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("missing input {path}: {hint}")]
    MissingInput { path: PathBuf, hint: String },

    #[error(transparent)]
    Core(mipt_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<mipt_core::Error> for CliError {
    fn from(e: mipt_core::Error) -> Self {
        match e {
            mipt_core::Error::InsufficientData { needed, got } => {
                CliError::InsufficientData(format!("needed {needed} samples, got {got}"))
            }
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::InsufficientData(_) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub trait IoContext<T> {
    fn at(self, path: &std::path::Path) -> CliResult<T>;
}

impl<T> IoContext<T> for std::io::Result<T> {
    fn at(self, path: &std::path::Path) -> CliResult<T> {
        self.map_err(|source| CliError::Io { path: path.to_path_buf(), source })
    }
}
