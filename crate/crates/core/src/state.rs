use std::fmt;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::{C64, CONSTRUCTION_TOLERANCE};

/// Which basis the amplitudes of a [`StateVector`] refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// `S_z` eigenbasis, `m = +j` first.
    Spherical,
    /// Spin-1 components along `e_x, e_y, e_z`.
    Cartesian,
    /// `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`.
    QubitPair,
}

impl BasisLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisLabel::Spherical => "spherical",
            BasisLabel::Cartesian => "cartesian",
            BasisLabel::QubitPair => "qubit-pair",
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BasisLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "spherical" => Ok(BasisLabel::Spherical),
            "cartesian" => Ok(BasisLabel::Cartesian),
            "qubit-pair" => Ok(BasisLabel::QubitPair),
            other => Err(format!("unknown basis '{other}'")),
        }
    }
}

/// A normalized pure state over a labeled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
    basis: BasisLabel,
}

impl StateVector {
    /// Wraps amplitudes that must already have unit norm within `1e-12`.
    pub fn new(amplitudes: DVector<C64>, basis: BasisLabel) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::ZeroVector);
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > CONSTRUCTION_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, basis })
    }

    pub fn from_slice(amplitudes: &[C64], basis: BasisLabel) -> Result<Self> {
        Self::new(DVector::from_column_slice(amplitudes), basis)
    }

    /// Scales arbitrary nonzero amplitudes onto the unit sphere, returning
    /// the state and the original norm.
    pub fn normalized(amplitudes: DVector<C64>, basis: BasisLabel) -> Result<(Self, f64)> {
        let norm = amplitudes.norm();
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok((
            Self {
                amplitudes: amplitudes.unscale(norm),
                basis,
            },
            norm,
        ))
    }

    /// Basis vector `index` of a `dim`-dimensional space.
    pub fn basis_state(dim: usize, index: usize, basis: BasisLabel) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dim {dim}"
        );
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { amplitudes, basis }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Multiplies by the global phase `e^{iα}`.
    pub fn with_phase(&self, alpha: f64) -> Self {
        let phase = C64::from_polar(1.0, alpha);
        Self {
            amplitudes: self.amplitudes.map(|a| a * phase),
            basis: self.basis,
        }
    }

    pub(crate) fn require_basis(&self, expected: BasisLabel) -> Result<()> {
        if self.basis != expected {
            return Err(Error::BasisMismatch {
                expected,
                actual: self.basis,
            });
        }
        Ok(())
    }

    pub(crate) fn require_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.dim(),
            });
        }
        Ok(())
    }

    /// Relabels without touching amplitudes.
    pub(crate) fn relabel(amplitudes: DVector<C64>, basis: BasisLabel) -> Self {
        Self { amplitudes, basis }
    }
}
