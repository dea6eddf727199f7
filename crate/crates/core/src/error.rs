use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Both branches of a projective measurement carried (numerically) zero
    /// weight; the state was not normalized on entry.
    #[error("numerical corruption: {0}")]
    NumericalCorruption(String),

    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("degenerate fit: {0}")]
    FitDegenerate(String),

    #[error("collapse window has no support for L = {0}")]
    EmptyWindow(usize),

    #[error("analysis failed: {0}")]
    AnalysisFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
