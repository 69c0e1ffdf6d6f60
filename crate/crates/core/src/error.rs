use thiserror::Error;

/// Failure categories shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in incompatible rings (variable lists, bases, coefficient types).
    #[error("structural error: {0}")]
    Structural(String),
    /// A result does not fit the requested truncation window.
    #[error("window error: {0}")]
    Window(String),
    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Division by zero or an inexact division.
    #[error("division error: {0}")]
    Division(String),
    /// A series that must be normalized (constant term 1) is not.
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
