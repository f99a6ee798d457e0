use thiserror::Error;

/// Errors raised by the classification library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("the zero vector is not a state")]
    ZeroState,
    #[error("pivot {pivot} is outside 1..={n}")]
    BadPivot { pivot: usize, n: usize },
    #[error("local operator {index} is numerically singular (|det| = {abs_det:e})")]
    SingularOperator { index: usize, abs_det: f64 },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("empty singular value spectrum")]
    EmptySpectrum,
    #[error("matrix is numerically singular")]
    SingularMatrix,
    #[error("expected {expected} subsystems, found {found}")]
    WrongArity { expected: &'static str, found: usize },
    #[error("state is not a qubit state (all dimensions must be 2)")]
    NotQubits,
    #[error("span generators are linearly dependent")]
    DependentGenerators,
    #[error("zero vector")]
    ZeroVector,
    #[error("inconsistent coefficient-matrix ranks {0:?}; tolerance breakdown")]
    InconsistentRanks([usize; 3]),
    #[error("reduction to canonical form failed: residual {residual:e} exceeds tolerance")]
    ReductionFailed { residual: f64 },
    #[error("{n} qubits exceeds the configured maximum of {max}")]
    UnsupportedDepth { n: usize, max: usize },
    #[error("descriptors describe different numbers of qubits ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("parameter vector is parallel to a computational basis vector")]
    DegenerateParameter,
    #[error("invalid tolerance policy: {0}")]
    InvalidPolicy(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
