//! Expectations, total variance and the zero-mean criterion for complete
//! entanglement.

use crate::algebra::{Observable, ObservableBasis};
use crate::error::{Error, Result};
use crate::state::StateVector;

/// Default tolerance for the CE test `max_i |⟨O_i⟩| ≤ tol`.
pub const DEFAULT_CE_TOLERANCE: f64 = 1e-9;

/// Largest imaginary part tolerated in `⟨ψ|O|ψ⟩`.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Slack on the variance bounds before a state is declared inconsistent.
pub const BOUNDS_SLACK: f64 = 1e-9;

/// Summands in `[−NOISE_FLOOR, 0)` are rounding noise and clamp to zero.
const NOISE_FLOOR: f64 = 1e-12;

/// Extremes `(V_min, V_max)` of the total variance over all pure states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceBounds {
    v_min: f64,
    v_max: f64,
}

impl VarianceBounds {
    pub fn new(v_min: f64, v_max: f64) -> Result<Self> {
        if !v_min.is_finite() || !v_max.is_finite() || v_max <= v_min {
            return Err(Error::InvalidBounds { v_min, v_max });
        }
        Ok(Self { v_min, v_max })
    }

    pub fn v_min(&self) -> f64 {
        self.v_min
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }
}

/// Outcome of the CE test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CeVerdict {
    pub is_ce: bool,
    /// `max_i |⟨O_i⟩|`.
    pub residual: f64,
    pub tolerance: f64,
}

pub fn expectation(psi: &StateVector, observable: &Observable) -> Result<f64> {
    psi.require_dim(observable.dim())?;
    let value = psi.amplitudes().dotc(&observable.apply(psi.amplitudes()));
    if value.im.abs() > IMAGINARY_TOLERANCE {
        return Err(Error::ComplexExpectation(value.im));
    }
    Ok(value.re)
}

fn check_compatible(psi: &StateVector, basis: &ObservableBasis) -> Result<()> {
    psi.require_dim(basis.dim())?;
    psi.require_basis(basis.state_basis())
}

pub fn expectation_vector(psi: &StateVector, basis: &ObservableBasis) -> Result<Vec<f64>> {
    check_compatible(psi, basis)?;
    basis
        .elements()
        .iter()
        .map(|o| expectation(psi, o))
        .collect()
}

/// Per-element `(⟨O⟩, ⟨O²⟩)`; `⟨O²⟩` is evaluated as `||Oψ||²`.
pub(crate) fn moments(psi: &StateVector, basis: &ObservableBasis) -> Result<Vec<(f64, f64)>> {
    check_compatible(psi, basis)?;
    basis
        .elements()
        .iter()
        .map(|o| {
            let image = o.apply(psi.amplitudes());
            let mean = psi.amplitudes().dotc(&image);
            if mean.im.abs() > IMAGINARY_TOLERANCE {
                return Err(Error::ComplexExpectation(mean.im));
            }
            Ok((mean.re, image.norm_squared()))
        })
        .collect()
}

fn variance_from_moments(moments: &[(f64, f64)]) -> f64 {
    moments
        .iter()
        .map(|&(mean, second)| {
            let v = second - mean * mean;
            debug_assert!(v >= -NOISE_FLOOR * 1e3, "negative variance {v}");
            if (-NOISE_FLOOR..0.0).contains(&v) {
                0.0
            } else {
                v
            }
        })
        .sum()
}

/// `V(ψ) = Σ_i (⟨O_i²⟩ − ⟨O_i⟩²)`.
pub fn total_variance(psi: &StateVector, basis: &ObservableBasis) -> Result<f64> {
    Ok(variance_from_moments(&moments(psi, basis)?))
}

/// CE test: every basis expectation vanishes within `tol`. Linearity of
/// `O ↦ ⟨O⟩` makes the basis sufficient for the whole algebra.
pub fn is_completely_entangled(
    psi: &StateVector,
    basis: &ObservableBasis,
    tol: f64,
) -> Result<CeVerdict> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let residual = max_abs(&expectation_vector(psi, basis)?);
    Ok(CeVerdict {
        is_ce: residual <= tol,
        residual,
        tolerance: tol,
    })
}

fn concurrence_from_variance(v_tot: f64, bounds: VarianceBounds) -> Result<f64> {
    let VarianceBounds { v_min, v_max } = bounds;
    if v_tot < v_min - BOUNDS_SLACK || v_tot > v_max + BOUNDS_SLACK {
        return Err(Error::VarianceOutOfBounds {
            v_tot,
            v_min,
            v_max,
        });
    }
    let ratio = ((v_tot - v_min) / (v_max - v_min)).clamp(0.0, 1.0);
    Ok(ratio.sqrt())
}

/// `C = sqrt((V − V_min) / (V_max − V_min))`.
pub fn variance_concurrence(
    psi: &StateVector,
    basis: &ObservableBasis,
    bounds: VarianceBounds,
) -> Result<f64> {
    concurrence_from_variance(total_variance(psi, basis)?, bounds)
}

/// Everything the fluctuation analysis says about one state.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationReport {
    pub expectations: Vec<f64>,
    pub v_tot: f64,
    pub bounds: Option<VarianceBounds>,
    pub ce_residual: f64,
    pub concurrence_variance: Option<f64>,
}

impl FluctuationReport {
    pub fn compute(
        psi: &StateVector,
        basis: &ObservableBasis,
        bounds: Option<VarianceBounds>,
    ) -> Result<Self> {
        let moments = moments(psi, basis)?;
        let expectations: Vec<f64> = moments.iter().map(|&(mean, _)| mean).collect();
        let v_tot = variance_from_moments(&moments);
        let concurrence_variance = bounds
            .map(|b| concurrence_from_variance(v_tot, b))
            .transpose()?;
        Ok(Self {
            ce_residual: max_abs(&expectations),
            expectations,
            v_tot,
            bounds,
            concurrence_variance,
        })
    }

    pub fn expectation_norm(&self) -> f64 {
        self.expectations.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}
