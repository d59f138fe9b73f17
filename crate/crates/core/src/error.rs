use thiserror::Error;

/// Errors raised by the algebra, invariant and calculator layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} variables, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },

    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,

    #[error("resource guard: step would expand {pairs} pairs (limit {limit})")]
    ResourceGuard { pairs: u128, limit: u64 },

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid ledger: {0}")]
    InvalidLedger(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A certified computation failed its own cross-check.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::ResourceGuard { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
