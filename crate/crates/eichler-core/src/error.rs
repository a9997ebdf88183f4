use alloc::string::String;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("coset enumeration exceeded {limit} cosets")]
    EnumerationOverflow { limit: usize },
    #[error("resource limit exceeded during {what} (limit {limit})")]
    ResourceExceeded { what: &'static str, limit: u64 },
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("{name}: expected {expected}, computed {computed}")]
    Validation { name: String, expected: String, computed: String },
    #[error("group is not a 2-group")]
    NotATwoGroup,
    #[error("group has no C2 x C2 quotient")]
    NoC22Quotient,
    #[error("group does not have periodic cohomology")]
    NotPeriodic,
    #[error("set is not closed under quotients: {0}")]
    NotQuotientClosed(String),
    #[error("group has no quotient {0}")]
    NoSuchQuotient(String),
    #[error("unknown group reference {0}")]
    UnknownGroup(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceExceeded { .. } | Error::EnumerationOverflow { .. })
    }
}
