use thiserror::Error;

/// Errors raised at input boundaries. Internal invariant violations panic instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid scalar literal: {0}")]
    InvalidScalar(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("morita axiom violated: {0}")]
    Axiom(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
