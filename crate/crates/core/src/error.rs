use thiserror::Error;

/// Failure kinds shared by every module. The CLI maps them onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied incompatible or malformed arguments.
    #[error("usage error: {0}")]
    Usage(String),
    /// Arguments are well formed but outside the mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size or trial cap would be exceeded.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// A computed object failed an internal consistency check.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Text input could not be parsed.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn cap<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::CapExceeded(msg.into()))
}

pub(crate) fn verification<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Verification(msg.into()))
}
