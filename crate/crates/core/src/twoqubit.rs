//! The triplet/singlet split of two spin-½ systems, linking spin-1 states to
//! symmetric two-qubit states and the determinant concurrence.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::state::{BasisLabel, StateVector};
use crate::C64;

/// Default bound on the antisymmetric amplitude in [`project_spin1`].
pub const DEFAULT_PROJECTION_TOLERANCE: f64 = 1e-9;

/// Normalized state over `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`. Flavor pairs
/// `(u, d) ⊗ (ū, d̄)` use the same ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState(StateVector);

impl TwoQubitState {
    pub fn new(amplitudes: [C64; 4]) -> Result<Self> {
        StateVector::from_slice(&amplitudes, BasisLabel::QubitPair).map(Self)
    }

    pub fn from_state(state: StateVector) -> Result<Self> {
        state.require_basis(BasisLabel::QubitPair)?;
        state.require_dim(4)?;
        Ok(Self(state))
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        let a = self.0.amplitudes();
        [a[0], a[1], a[2], a[3]]
    }

    pub fn state(&self) -> &StateVector {
        &self.0
    }

    pub fn into_state(self) -> StateVector {
        self.0
    }

    /// Exchanges the two qubits.
    pub fn swapped(&self) -> Self {
        let [uu, ud, du, dd] = self.amplitudes();
        Self(StateVector::relabel(
            DVector::from_vec(vec![uu, du, ud, dd]),
            BasisLabel::QubitPair,
        ))
    }
}

/// Orthogonal split into the symmetric (spin-1) and antisymmetric
/// (singlet) sectors. Components are unnormalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorDecomposition {
    /// Triplet amplitudes `(ψ₊₁, ψ₀, ψ₋₁)`.
    pub symmetric: [C64; 3],
    /// Overlap with the singlet.
    pub antisymmetric: C64,
}

impl SectorDecomposition {
    pub fn symmetric_weight(&self) -> f64 {
        self.symmetric.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn antisymmetric_weight(&self) -> f64 {
        self.antisymmetric.norm_sqr()
    }
}

pub fn decompose(chi: &TwoQubitState) -> SectorDecomposition {
    let [uu, ud, du, dd] = chi.amplitudes();
    SectorDecomposition {
        symmetric: [uu, (ud + du) * FRAC_1_SQRT_2, dd],
        antisymmetric: (ud - du) * FRAC_1_SQRT_2,
    }
}

/// `|+1⟩ ↦ |↑↑⟩`, `|0⟩ ↦ (|↑↓⟩ + |↓↑⟩)/√2`, `|−1⟩ ↦ |↓↓⟩`.
pub fn embed_symmetric(psi: &StateVector) -> Result<TwoQubitState> {
    psi.require_basis(BasisLabel::Spherical)?;
    psi.require_dim(3)?;
    let a = psi.amplitudes();
    let mid = a[1] * FRAC_1_SQRT_2;
    Ok(TwoQubitState(StateVector::relabel(
        DVector::from_vec(vec![a[0], mid, mid, a[2]]),
        BasisLabel::QubitPair,
    )))
}

/// Inverse of [`embed_symmetric`] on the triplet sector, renormalized.
/// Fails when the singlet amplitude exceeds `tol` or the triplet part
/// vanishes.
pub fn project_spin1(chi: &TwoQubitState, tol: f64) -> Result<StateVector> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let parts = decompose(chi);
    let weight = parts.symmetric_weight();
    if weight.sqrt() <= tol {
        return Err(Error::NoSymmetricComponent);
    }
    let magnitude = parts.antisymmetric.norm();
    if magnitude > tol {
        return Err(Error::AntisymmetricComponent { magnitude, tol });
    }
    let (state, _) = StateVector::normalized(
        DVector::from_row_slice(&parts.symmetric),
        BasisLabel::Spherical,
    )?;
    Ok(state)
}

/// `(|↑↓⟩ − |↓↑⟩)/√2`.
pub fn singlet() -> TwoQubitState {
    let r = FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    TwoQubitState(StateVector::relabel(
        DVector::from_vec(vec![z, C64::new(r, 0.0), C64::new(-r, 0.0), z]),
        BasisLabel::QubitPair,
    ))
}

/// `C = 2|ψ↑↑ψ↓↓ − ψ↑↓ψ↓↑|`.
pub fn pure_concurrence(chi: &TwoQubitState) -> f64 {
    let [uu, ud, du, dd] = chi.amplitudes();
    2.0 * (uu * dd - ud * du).norm()
}
