use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomials belong to different generator sets")]
    MismatchedAlgebras,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal contradiction: {0}")]
    Contradiction(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("model file error: {0}")]
    ModelFile(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
