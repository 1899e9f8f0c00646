use thiserror::Error;

#[derive(Debug, Error)]
pub enum SignatureError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("arrangement enumeration did not stabilise: {0}")]
    Unstable(String),
}
