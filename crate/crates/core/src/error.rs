use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("enumeration of {needed} candidates exceeds cap {cap}")]
    Budget { needed: u128, cap: u128 },
    #[error("truncated: {0}")]
    Truncated(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Shape(msg.into()))
}

pub(crate) fn boundary<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Boundary(msg.into()))
}
