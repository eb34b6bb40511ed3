use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{m} exceeds 2^20")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("element {value} out of range for GF({q})")]
    OutOfRange { value: u64, q: u32 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("uncorrectable erasure pattern")]
    Uncorrectable,
    #[error("known symbols are inconsistent with the parity checks")]
    Inconsistent,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("erased set and repair set overlap at {0}")]
    Overlap(usize),
    #[error("duplicate index {0}")]
    Duplicate(usize),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("invalid repair set returned for {0:?}")]
    InvalidRepairSet(Vec<usize>),
    #[error("no intact repair group for any remaining erasure")]
    NoIntactGroup,
    #[error("strategy does not apply: {0}")]
    Strategy(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}
