use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("conductor {from} does not divide {to}")]
    NotASubfield { from: u32, to: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("circuit contains a cycle")]
    CycleDetected,
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("rank {rank} exceeds the allowed {bound}")]
    RankTooLarge { rank: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size guard: {0}")]
    Guard(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
