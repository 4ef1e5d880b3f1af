use thiserror::Error;

/// Errors reported by the library.
///
/// `Defect` never signals bad input: it means an internal invariant failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator index {j} outside [1, {d}]")]
    OperatorIndex { j: usize, d: usize },
    #[error("tightness index {r} outside [2, {d}]")]
    TightnessIndex { r: usize, d: usize },
    #[error("slots are not strictly increasing in height order")]
    SlotOrder,
    #[error("partition {parts:?} does not fit in a {rows}x{cols} box")]
    PartitionOutsideBox { parts: Vec<usize>, rows: usize, cols: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("generators are not a free basis")]
    NotFree,
    #[error("series has a term of t-degree 0; 1/(1-p) does not converge under t-truncation")]
    NonTopologicalNilpotent,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("enumeration needs {needed} ambient vectors, above the cap of {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("quotient dimension {codim} exceeds truncation level {trunc}")]
    ColengthExceedsTruncation { codim: usize, trunc: usize },
    #[error("ambient mismatch between module vectors")]
    AmbientMismatch,
    #[error("internal invariant violated: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
