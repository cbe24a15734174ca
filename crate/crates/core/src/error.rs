use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    /// An exact division that a theorem guarantees has failed.
    #[error("theorem falsified: {0}")]
    Falsified(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncMismatch(usize, usize),
    #[error("truncation overflow: {0}")]
    TruncOverflow(String),
    #[error("invalid ring descriptor `{0}`: {1}")]
    BadDescriptor(String, String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    /// The degree bound was too small to see a full set of generators.
    #[error("under-saturated at degree bound {bound}: found rank {found}, expected {expected}; increase the bound")]
    UnderSaturated { bound: usize, found: usize, expected: usize },
    #[error("decode error: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
