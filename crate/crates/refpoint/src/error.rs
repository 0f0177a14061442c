use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} criteria, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("infeasible reference point: component {index} exceeds the ideal point")]
    InfeasibleRefpoint { index: usize },

    #[error("empty point set")]
    EmptySet,

    #[error("target is unreachable from the source")]
    Unreachable,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("linear program is infeasible")]
    LpInfeasible,

    #[error("linear program is unbounded")]
    LpUnbounded,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("solver contract violation: {0}")]
    ContractViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
