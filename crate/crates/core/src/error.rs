use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("config field `{field}`: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("failed to parse config: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("episode already finished; call reset first")]
    EpisodeDone,
}

impl Error {
    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Config {
            field,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
