use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("ground set of {n} elements exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("ground sets differ: {left} vs {right} elements")]
    GroundMismatch { left: usize, right: usize },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("derivation failed: {0}")]
    Derivation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
