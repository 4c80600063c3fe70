use thiserror::Error;

/// Errors raised by the frame toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("non-finite entry encountered")]
    NonFinite,

    #[error("columns are not orthonormal (max Gram deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("family is not a frame (lower bound {lower:e})")]
    NotAFrame { lower: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("operator is singular at pivot tolerance")]
    SingularOperator,

    #[error("partition has length {found}, family has {expected} indices")]
    PartitionLengthMismatch { expected: usize, found: usize },

    #[error("partition entry {entry} at index {index} is outside 1..={m}")]
    InvalidPartition {
        index: usize,
        entry: usize,
        m: usize,
    },

    #[error("{count} partitions exceed the enumeration cap of {cap}; use sampling")]
    TooManyPartitions { count: String, cap: u64 },

    #[error("operation requires a {expected} family")]
    WrongKind { expected: &'static str },

    #[error("index sets differ: {left} vs {right} members")]
    IndexMismatch { left: usize, right: usize },

    #[error("operation requires exactly two systems, found {found}")]
    RequiresTwoSystems { found: usize },

    #[error("weight {value} at index {index} is not a positive finite number")]
    InvalidWeight { index: usize, value: f64 },

    #[error("E*E does not leave the member subspaces invariant (deviation {deviation:e})")]
    InvarianceViolated { deviation: f64 },

    #[error("operator is not self-adjoint (deviation {deviation:e})")]
    NotSelfAdjoint { deviation: f64 },

    #[error("every member intersects the subspace trivially")]
    EmptyIntersection,

    #[error(
        "hypothesis not met: removed part has bound {removed:e} >= woven lower bound {lower:e}"
    )]
    HypothesisNotMet { removed: f64, lower: f64 },

    #[error("constant {name} = {value} is outside its admissible range")]
    ConstantOutOfRange { name: &'static str, value: f64 },

    #[error("weights of the two fusion frames differ at index {index}")]
    WeightMismatch { index: usize },

    #[error("truncation dimension {dim} is too small (need at least {min})")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("truncation dimension {dim} must be even")]
    OddDimension { dim: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, FrameError>;
