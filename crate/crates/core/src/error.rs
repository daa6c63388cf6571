use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("axiom failure: {0}")]
    AxiomFailure(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors the CLI maps to a usage/cap exit code.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded(_) | Error::InvalidInput(_) | Error::Mismatch(_) | Error::Unsupported(_) | Error::Io(_)
        )
    }
}
