use thiserror::Error;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("corrupt index file: {0}")]
    Corrupt(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
