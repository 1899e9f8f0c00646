use frix_index::IndexError;
use frix_lbgen::LbError;
use frix_signature::SignatureError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Resource(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    /// Process exit status: 2 validation, 3 resource cap, 4 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("i/o error: {e}"))
    }
}

impl From<LbError> for CliError {
    fn from(e: LbError) -> Self {
        match e {
            LbError::Constraint { .. } | LbError::Invalid(_) => CliError::Validation(e.to_string()),
            LbError::Resource(_) | LbError::PruneFailed(_) => CliError::Resource(e.to_string()),
        }
    }
}

impl From<IndexError> for CliError {
    fn from(e: IndexError) -> Self {
        match e {
            IndexError::Invariant(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<SignatureError> for CliError {
    fn from(e: SignatureError) -> Self {
        match e {
            SignatureError::Invalid(_) => CliError::Validation(e.to_string()),
            SignatureError::Resource(_) => CliError::Resource(e.to_string()),
            SignatureError::Unstable(_) => CliError::Internal(e.to_string()),
        }
    }
}
