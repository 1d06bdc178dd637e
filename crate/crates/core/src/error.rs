use thiserror::Error;

/// Failure kinds shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A result contradicted an invariant that should hold unconditionally.
    #[error("integrity error: {0}")]
    Integrity(String),
    /// A configured size limit was exceeded.
    #[error("resource error: {what} exceeds ceiling {ceiling}")]
    Resource { what: String, ceiling: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn integrity(msg: impl Into<String>) -> Error {
    Error::Integrity(msg.into())
}
