use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("width mismatch: expected {expected} bits, got {got}")]
    Width { expected: usize, got: usize },

    #[error("value outside domain: {0}")]
    Domain(String),

    #[error("decryption failed: {0}")]
    Decryption(String),

    #[error("oracle discipline violated: {0}")]
    Discipline(String),

    #[error("query budget exceeded: {0}")]
    Budget(String),

    #[error("protocol abort: {0}")]
    Soundness(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Quantum(#[from] qsim::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
