use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameters for {family}: {reason}")]
    InvalidFamily { family: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} cap exceeded ({limit}); graph too large for exact computation")]
    CapExceeded { what: &'static str, limit: u64 },

    #[error("refusing n = {n}, ℓ = {l}: estimated work {estimate} exceeds the cap {limit}")]
    CapRefused { n: usize, l: usize, estimate: u64, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vector is not palindromic: {0}")]
    NotPalindromic(String),

    #[error("check failed at step {step}: {check}")]
    CheckFailed { step: usize, check: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
