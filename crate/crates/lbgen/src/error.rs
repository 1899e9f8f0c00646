use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LbError {
    /// A construction parameter constraint failed; the message names it.
    #[error("constraint {constraint} violated: {detail}")]
    Constraint { constraint: &'static str, detail: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource limit: {0}")]
    Resource(String),
    /// Colour pruning did not reach the target size.
    #[error("colour pruning failed: {0}")]
    PruneFailed(String),
}

pub(crate) fn constraint(constraint: &'static str, detail: impl Into<String>) -> LbError {
    LbError::Constraint { constraint, detail: detail.into() }
}
