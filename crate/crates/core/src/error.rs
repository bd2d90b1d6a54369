use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension vector needs at least two entries, got {0}")]
    TooShort(usize),

    #[error("orders differ: expected n = {expected}, got n = {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("column {column}: multiplicities sum to {found}, dimension is {expected}")]
    ColumnSumMismatch {
        column: usize,
        expected: u64,
        found: u64,
    },

    #[error("not a rank pattern: recovered multiplicity at [{k},{l}] is {value}")]
    NotAPattern { k: usize, l: usize, value: i128 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("infeasible vector: {0}")]
    InfeasibleVector(String),

    #[error("position {k} holds {value}, but the minimum entry is {min}")]
    NotAMinimumPosition { k: usize, value: u64, min: u64 },

    #[error("dimension vector is not weakly increasing")]
    NotIncreasing,

    #[error("malformed lace diagram: {0}")]
    MalformedDiagram(String),

    #[error("closed form produced a non-integral codimension {0}")]
    IntegralityViolation(String),

    #[error("search space too large: more than {cap} partitions")]
    SearchSpaceTooLarge { cap: u64 },

    #[error("series is zero up to order {order}")]
    AllZeroUpToN { order: usize },

    #[error("matrix shapes do not chain: {0}")]
    ShapeMismatch(String),

    #[error("cross-check needs at least two methods, got {0}")]
    TooFewMethods(usize),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
