use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max |U†U - 1| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("state trace is {trace}, expected 1")]
    TraceNotUnit { trace: f64 },

    #[error("expectation value has imaginary part {imaginary:e}; Hermiticity broke upstream")]
    ComplexExpectation { imaginary: f64 },

    #[error("retention value {value} outside [0, 1]")]
    RetentionOutOfRange { value: f64 },

    #[error("velocity must be positive, got {0}")]
    NonPositiveVelocity(f64),

    #[error("duration must be positive, got {0}")]
    NonPositiveDuration(f64),

    #[error("Zeno leading coefficient is undefined for velocity-scaled couplings")]
    VelocityScaledZeno,

    #[error("the joint-unitary oracle has no dissipation channel (gamma_A = {0})")]
    DissipativeOracle(f64),

    #[error("convex spec carries energies only; no state endpoints available")]
    MissingStates,

    #[error("unknown model '{0}'")]
    UnknownModel(String),

    #[error("model '{model}' cannot be built from {given} parameters")]
    ModelParameterMismatch {
        model: &'static str,
        given: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
