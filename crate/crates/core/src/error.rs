use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An argument lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Vector or matrix dimensions do not match.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A moment or integral does not exist for the given shape parameter.
    #[error("non-integrable: {0}")]
    NonIntegrable(String),

    /// The sample is too small for the requested statistic.
    #[error("sample too small: {0}")]
    SampleTooSmall(String),

    /// Naive tuple enumeration was refused and no fast path exists.
    #[error("complexity guard: {0}")]
    ComplexityGuard(String),

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),

    /// A configuration file could not be parsed or is inconsistent.
    #[error("config error: {0}")]
    Config(String),

    /// Input data is malformed.
    #[error("input error: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
