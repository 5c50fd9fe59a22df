use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter {name} = {value}: {reason}")]
    Param {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(&'static str),

    #[error("channel probability p[{i}][{j}] = {value:.3e} lies outside [0, 1]")]
    Probability { i: usize, j: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
