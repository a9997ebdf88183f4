use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] eichler_core::Error),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for parse errors, 3 for resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(e) if e.is_resource() => 3,
            Error::Core(eichler_core::Error::Parse { .. } | eichler_core::Error::InvalidSpec(_) | eichler_core::Error::UnknownGroup(_))
            | Error::Config(_) | Error::Json(_) => 2,
            _ => 1,
        }
    }
}
