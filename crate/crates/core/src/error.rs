use thiserror::Error;

/// Errors produced by the field, subspace, design and construction layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("modulus polynomial is reducible over GF({p})")]
    ReducibleModulus { p: u32 },

    #[error(
        "designated generator is not primitive (multiplicative order {order}, expected {expected})"
    )]
    NotPrimitive { order: u32, expected: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("incompatible field tower: {0}")]
    IncompatibleTower(String),

    #[error("ambient mismatch: {0}")]
    Mismatch(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("input is not a verified {0}")]
    Unverified(String),

    #[error("construction self-check failed: {0}")]
    SelfCheck(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
