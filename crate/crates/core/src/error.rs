use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("ring mismatch: expected {expected}, got {got}")]
    RingMismatch { expected: String, got: String },
    #[error("engine mismatch: {0}")]
    EngineMismatch(String),
    #[error("truncation exceeded: {0}")]
    TruncationExceeded(String),
    #[error("sigma strategy failed: {0}")]
    SigmaStrategyFailed(String),
    #[error("not reachable within truncation: {0}")]
    NotReachable(String),
    #[error("missing generator assignment: {0}")]
    MissingGeneratorAssignment(String),
    #[error("not acyclic: {0}")]
    NotAcyclic(String),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("zero element")]
    ZeroElement,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
