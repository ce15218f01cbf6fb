use thiserror::Error;

use crate::coxeter::GroupId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("node index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: GroupId, found: GroupId },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("non-Coxeter entry at nodes ({i}, {j}): A_ij*A_ji = {product}")]
    NonCoxeterEntry { i: usize, j: usize, product: String },

    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("64-bit overflow in {0}")]
    Overflow(&'static str),

    #[error("affine root has zero norm")]
    ZeroAffineRoot,

    #[error("no affine root in base span: {0}")]
    NoAffineRoot(String),

    #[error("axis {axis} is not supported for {group}")]
    UnsupportedAxis { group: GroupId, axis: String },

    #[error("border is not of single-axis form: {0}")]
    NotSingleAxis(String),

    #[error("extension is not in a known Fibonacci family: {0}")]
    NotInFamily(String),

    #[error("unknown extension `{name}` (known: {known})")]
    UnknownExtension { name: String, known: String },

    #[error("unknown group `{0}` (known: A4, D6, E8, H2, H3, H4)")]
    UnknownGroup(String),

    #[error("generic-length samples disagree: {first} vs {second}")]
    OracleDisagreement { first: usize, second: usize },

    #[error("estimated {estimate} candidate points exceeds the limit of {limit}")]
    MemoryEstimate { estimate: u128, limit: u128 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
