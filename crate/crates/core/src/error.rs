use std::path::PathBuf;

/// Errors raised by model evaluation, fitting and data ingestion.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("horizon {horizon} exceeds load series length {len}")]
    InputLength { horizon: usize, len: usize },

    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    #[error("invalid load series: {0}")]
    InvalidLoad(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("line {line}: duplicate day {day}")]
    DuplicateDay { line: u64, day: usize },

    #[error("line {line}: {message}")]
    Constraint { line: u64, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::ParamDomain(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
