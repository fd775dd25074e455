use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} and {1} are not similar")]
    NotSimilar(String, String),

    #[error("constant polynomial has no leaders")]
    ConstantPolynomial,

    #[error("set is not autoreduced: {0}")]
    NotAutoreduced(String),

    #[error("system is inconsistent: the ideal contains the nonzero constant {0}")]
    Inconsistent(String),

    #[error("completion did not stabilise after {rounds} rounds ({pending} witnesses still nonzero)")]
    CompletionLimit { rounds: usize, pending: usize },

    #[error("reduction did not terminate within {0} steps")]
    ReductionLimit(usize),

    #[error("enumeration needs {needed} elements, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("not a numerical polynomial: {0}")]
    NotNumerical(String),

    #[error("values are not polynomial on the grid: at {point:?} expected {expected}, got {actual}")]
    Interpolation {
        point: Vec<i64>,
        expected: String,
        actual: String,
    },

    #[error("oracle mismatch at {point:?}: polynomial gives {polynomial}, enumeration gives {count}")]
    OracleMismatch {
        point: Vec<i64>,
        polynomial: String,
        count: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
