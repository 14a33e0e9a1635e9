use num_complex::Complex64;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("grid of {grid_size} points is too coarse for degree {degree} (need a power of two >= 8*degree)")]
    AliasingRisk { grid_size: usize, degree: usize },

    #[error("root {root} lies within {tol:e} of the unit circle")]
    UnitModulusRoot { root: Complex64, tol: f64 },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    RootFindFailure { iterations: usize, residual: f64 },

    #[error("unbalanced root split: {inside} roots inside, {outside} outside")]
    UnbalancedWinding { inside: usize, outside: usize },

    #[error("coincident poles near {pole}")]
    DegeneratePoles { pole: Complex64 },

    #[error("matrix is numerically singular (pivot magnitude {pivot:e})")]
    SingularMatrix { pivot: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("QL iteration failed to converge for eigenvalue {index}")]
    EigenFailure { index: usize },

    #[error("no antecedent found for eigenvalue {lambda}")]
    LocalizationFailure { lambda: f64 },

    #[error("lambda = {lambda} is excluded: {reason}")]
    ExcludedLambda { lambda: f64, reason: String },

    #[error("Toeplitz matrix is not positive definite (reflection coefficient {reflection} at order {order})")]
    NotPositiveDefinite { order: usize, reflection: f64 },

    #[error("predictor polynomial vanishes on the unit circle (min modulus {min_modulus:e})")]
    PredictorRootOnCircle { min_modulus: f64 },

    #[error("Hankel product norm {norm} is not below 1")]
    NeumannCondition { norm: f64 },

    #[error("reduced system I - H~H is singular")]
    SmallSystemSingular,

    #[error("fit window holds {points} points, need at least {needed}")]
    WindowTooSmall { points: usize, needed: usize },

    #[error("degree cap {degree} reached with error {achieved:e}")]
    ApproxFailure { degree: usize, achieved: f64 },

    #[error("symbol has {count} minimizers, expected exactly one")]
    NonUniqueMinimum { count: usize },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
