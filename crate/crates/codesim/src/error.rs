use thiserror::Error;

/// Failure classes, each mapped to a distinct process exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration or usage (exit 1).
    #[error("configuration: {0}")]
    Config(String),
    /// The input corpus could not be ingested (exit 2).
    #[error("ingestion: {0}")]
    Ingestion(String),
    /// An output artifact could not be written (exit 1).
    #[error("write: {0}")]
    Write(String),
    /// A computed value violated an invariant that correct code upholds (exit 3).
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Write(_) => 1,
            Error::Ingestion(_) => 2,
            Error::Internal(_) => 3,
        }
    }

    /// Prefix the message with the pipeline stage that raised it.
    pub(crate) fn in_stage(self, stage: &str) -> Error {
        match self {
            Error::Config(m) => Error::Config(format!("{stage}: {m}")),
            Error::Ingestion(m) => Error::Ingestion(format!("{stage}: {m}")),
            Error::Write(m) => Error::Write(format!("{stage}: {m}")),
            Error::Internal(m) => Error::Internal(format!("{stage}: {m}")),
        }
    }
}
