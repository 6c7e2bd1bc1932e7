use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    /// The requested method does not apply to this input (e.g. Ore's theorem at a
    /// non-regular prime).
    #[error("not applicable: {0}")]
    NotApplicable(String),
    /// An internal invariant was violated. Seeing this is a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
