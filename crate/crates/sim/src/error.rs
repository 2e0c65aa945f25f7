use thiserror::Error;

use topocon_core::trace::TraceError;

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Model(#[from] topocon_core::Error),

    #[error("config: {0}")]
    Config(String),

    #[error("analysis: {0}")]
    Analysis(String),

    #[error("trace: {0}")]
    Trace(#[from] TraceError),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        HarnessError::Config(msg.into())
    }

    pub(crate) fn analysis(msg: impl Into<String>) -> Self {
        HarnessError::Analysis(msg.into())
    }
}
