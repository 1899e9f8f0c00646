use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate geometry: {0}")]
    Degenerate(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
}
