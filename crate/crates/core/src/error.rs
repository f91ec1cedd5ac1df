use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("item {index}: size must be positive")]
    ZeroSize { index: usize },

    #[error("item {index}: field `{field}` is negative ({value})")]
    Negative {
        index: usize,
        field: &'static str,
        value: i64,
    },

    #[error("capacity must be non-negative, got {0}")]
    NegativeCapacity(i64),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("solution has {got} entries, instance has {expected} items")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dynamic program needs {needed} cell updates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("value {0} is not attainable")]
    Unreachable(i128),

    #[error("target {target} outside [0, {total}]")]
    OutOfRange { target: u64, total: u64 },

    #[error("multiset is not dense enough: {0}")]
    NotDense(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
