use thiserror::Error;

/// Errors raised by the algebra, geometry and document layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("scalar kind mismatch: cannot combine {0} with {1}")]
    KindMismatch(&'static str, &'static str),

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("not a positive 3-form: {0}")]
    NotPositive(String),

    #[error("exact Hodge star requires a metric with rational sqrt(det g)")]
    ExactMetricNotIdentity,

    #[error("value is not exactly representable, float mode required: {0}")]
    NeedsFloat(String),

    #[error("form is supported outside the subspace {0:?}")]
    OutsideSubspace(Vec<usize>),

    #[error("characteristic connection does not exist (tau2 != 0)")]
    NoCharacteristicConnection,

    #[error("input not coclosed: {0}")]
    NotCoclosed(String),

    #[error("basis not adapted: {0}")]
    NotAdapted(String),

    #[error("subspace is not calibrated by phi: {0}")]
    NotCalibrated(String),

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown family '{0}'")]
    UnknownFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
