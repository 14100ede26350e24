use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource limit in {stage}: {detail}")]
    Resource { stage: String, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn resource(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Resource { stage: stage.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
