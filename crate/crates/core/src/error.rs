use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type {lie_type}{rank}")]
    InvalidType { lie_type: char, rank: usize },

    #[error("cannot parse Cartan type from {0:?}")]
    ParseType(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("simple root index {index} out of range for rank {rank}")]
    BadSimpleIndex { index: usize, rank: usize },

    #[error("group has {order} elements, above the enumeration cap of {cap}")]
    GroupTooLarge { order: u128, cap: usize },

    #[error("Koszul guard exceeded: {cut} cut coordinates (limit {limit})")]
    GuardExceeded { cut: usize, limit: usize },

    #[error("invalid affine model: {0}")]
    InvalidModel(String),

    #[error("oracle failure: {0}")]
    OracleFailure(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse word {0:?}")]
    ParseWord(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
