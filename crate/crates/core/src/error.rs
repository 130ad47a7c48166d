use thiserror::Error;

use crate::state::BasisLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("spin quantum number {0} is not a positive half-integer")]
    InvalidSpin(f64),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is in the {actual} basis, expected {expected}")]
    BasisMismatch {
        expected: BasisLabel,
        actual: BasisLabel,
    },

    #[error("state is not normalized: norm {norm}")]
    NotNormalized { norm: f64 },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("expectation value has imaginary part {0:e}; operator is not Hermitian")]
    ComplexExpectation(f64),

    #[error("observable basis is empty")]
    EmptyBasis,

    #[error("su(2) commutation relations violated (max deviation {deviation:e})")]
    CommutationViolated { deviation: f64 },

    #[error("matrix is not orthogonal (max deviation of RᵀR from I: {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("basis rotation needs exactly 3 elements, got {0}")]
    NotThreeDimensional(usize),

    #[error("vector is not a unit vector: norm {0}")]
    NotUnitVector(f64),

    #[error("angle {0} outside [0, π/4]")]
    PhiOutOfRange(f64),

    #[error("invalid variance bounds: v_min {v_min} must be below v_max {v_max}")]
    InvalidBounds { v_min: f64, v_max: f64 },

    #[error("total variance {v_tot} outside bounds [{v_min}, {v_max}]")]
    VarianceOutOfBounds { v_tot: f64, v_min: f64, v_max: f64 },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("state has no symmetric (spin-1) component")]
    NoSymmetricComponent,

    #[error("antisymmetric component {magnitude:e} exceeds tolerance {tol:e}")]
    AntisymmetricComponent { magnitude: f64, tol: f64 },
}
