use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] bromwich_core::Error),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("argument grid is empty")]
    EmptyGrid,
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Process exit code: 2 for anything the caller can fix by changing
    /// input, 1 for environment failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}
