//! Spin-1 states as complexified Euclidean vectors.
//!
//! Every normalized `ψ ∈ C³` can be written `e^{iθ}(cos φ·μ + i sin φ·ν)`
//! with orthonormal real `μ, ν` and `0 ≤ φ ≤ π/4`. Rotations act on `μ, ν`
//! only, so `φ` is the single rotation invariant. `φ = 0` states are CE,
//! `φ = π/4` states are coherent, and the concurrence is `cos 2φ`.
//!
//! Spherical components are ordered `(ψ₊₁, ψ₀, ψ₋₁)` and related to
//! Cartesian ones by the Condon-Shortley dictionary
//! `|+1⟩ = −(e_x + i e_y)/√2`, `|0⟩ = e_z`, `|−1⟩ = (e_x − i e_y)/√2`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use crate::algebra::{AlgebraKind, Observable, ObservableBasis, Spin};
use crate::error::{Error, Result};
use crate::state::{BasisLabel, StateVector};
use crate::C64;

/// Below this `|b|` the second axis `ν` is undetermined.
pub const NU_THRESHOLD: f64 = 1e-9;

const UNIT_TOLERANCE: f64 = 1e-10;
const PHI_SLACK: f64 = 1e-12;

/// `ψ = e^{iθ}(cos φ·μ + i sin φ·ν)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    /// Global phase in `[0, π)`.
    pub theta: f64,
    /// Intrinsic invariant in `[0, π/4]`.
    pub phi: f64,
    pub mu: Vector3<f64>,
    /// Unit vector orthogonal to `mu`; arbitrary when `nu_defined` is false.
    pub nu: Vector3<f64>,
    pub nu_defined: bool,
}

impl CanonicalForm {
    /// Cartesian amplitudes `e^{iθ}(cos φ·μ + i sin φ·ν)`.
    pub fn reconstruct(&self) -> [C64; 3] {
        let phase = C64::from_polar(1.0, self.theta);
        let (s, c) = self.phi.sin_cos();
        [0, 1, 2].map(|k| phase * C64::new(c * self.mu[k], s * self.nu[k]))
    }

    pub fn concurrence(&self) -> f64 {
        (2.0 * self.phi).cos()
    }
}

fn require_spin1(psi: &StateVector, basis: BasisLabel) -> Result<()> {
    psi.require_basis(basis)?;
    psi.require_dim(3)
}

/// Columns are the Cartesian images of `|+1⟩, |0⟩, |−1⟩`.
pub fn spherical_to_cartesian_matrix() -> DMatrix<C64> {
    let r = FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    DMatrix::from_row_slice(
        3,
        3,
        &[
            C64::new(-r, 0.0),
            z,
            C64::new(r, 0.0),
            C64::new(0.0, -r),
            z,
            C64::new(0.0, -r),
            z,
            C64::new(1.0, 0.0),
            z,
        ],
    )
}

pub fn to_cartesian(psi: &StateVector) -> Result<StateVector> {
    require_spin1(psi, BasisLabel::Spherical)?;
    let a = psi.amplitudes();
    let (plus, zero, minus) = (a[0], a[1], a[2]);
    let i = C64::new(0.0, 1.0);
    let x = (minus - plus) * FRAC_1_SQRT_2;
    let y = -i * (plus + minus) * FRAC_1_SQRT_2;
    Ok(StateVector::relabel(
        DVector::from_vec(vec![x, y, zero]),
        BasisLabel::Cartesian,
    ))
}

pub fn to_spherical(psi: &StateVector) -> Result<StateVector> {
    require_spin1(psi, BasisLabel::Cartesian)?;
    let a = psi.amplitudes();
    let (x, y, z) = (a[0], a[1], a[2]);
    let i = C64::new(0.0, 1.0);
    let plus = (-x + i * y) * FRAC_1_SQRT_2;
    let minus = (x + i * y) * FRAC_1_SQRT_2;
    Ok(StateVector::relabel(
        DVector::from_vec(vec![plus, z, minus]),
        BasisLabel::Spherical,
    ))
}

/// The rotation-invariant bilinear form `Σ_k ψ_k²` (no conjugation).
pub fn bilinear_form(psi: &StateVector) -> Result<C64> {
    require_spin1(psi, BasisLabel::Cartesian)?;
    Ok(psi.amplitudes().iter().map(|z| z * z).sum())
}

pub fn canonical_form(psi: &StateVector) -> Result<CanonicalForm> {
    let w = bilinear_form(psi)?;
    let amps = psi.amplitudes();

    // e^{-2iθ} w ≥ 0 fixes θ mod π; w = 0 leaves it free.
    let mut theta = if w.norm() < f64::EPSILON {
        0.0
    } else {
        w.arg() / 2.0
    };
    if theta < 0.0 {
        theta += PI;
    }
    let unphase = C64::from_polar(1.0, -theta);
    let rotated: Vec<C64> = amps.iter().map(|z| z * unphase).collect();
    let mut a = Vector3::from_fn(|k, _| rotated[k].re);
    let mut b = Vector3::from_fn(|k, _| rotated[k].im);

    // a + ib = i(b − ia)
    if a.norm() < b.norm() {
        theta += FRAC_PI_2;
        let old_a = a;
        a = b;
        b = -old_a;
    }
    if theta >= PI {
        theta -= PI;
        a = -a;
        b = -b;
    }

    let (a_norm, b_norm) = (a.norm(), b.norm());
    let phi = b_norm.atan2(a_norm).min(FRAC_PI_4);
    let mu = a / a_norm;
    let projected = b - mu * b.dot(&mu);
    let (nu, nu_defined) = if b_norm > NU_THRESHOLD && projected.norm() > 0.0 {
        (projected.normalize(), true)
    } else {
        (any_orthogonal(&mu), false)
    };
    Ok(CanonicalForm {
        theta,
        phi,
        mu,
        nu,
        nu_defined,
    })
}

fn any_orthogonal(v: &Vector3<f64>) -> Vector3<f64> {
    let axis = if v.x.abs() <= v.y.abs() && v.x.abs() <= v.z.abs() {
        Vector3::x()
    } else if v.y.abs() <= v.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    v.cross(&axis).normalize()
}

fn require_unit(v: &Vector3<f64>) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NotUnitVector(norm));
    }
    Ok(())
}

/// Spin projection onto `omega` in the Cartesian basis: `x ↦ i ω × x`.
pub fn spin_projection_operator(omega: &Vector3<f64>) -> Result<Observable> {
    require_unit(omega)?;
    let i = C64::new(0.0, 1.0);
    let cross = omega.cross_matrix();
    Ok(Observable::from_trusted(DMatrix::from_fn(3, 3, |r, c| {
        i * cross[(r, c)]
    })))
}

/// `{S_{e_x}, S_{e_y}, S_{e_z}}` acting on Cartesian states.
pub fn cartesian_generators() -> ObservableBasis {
    let elements = [Vector3::x(), Vector3::y(), Vector3::z()]
        .iter()
        .map(|axis| spin_projection_operator(axis).expect("unit axis"))
        .collect();
    ObservableBasis::new(elements, AlgebraKind::Su2(Spin::ONE), BasisLabel::Cartesian)
        .expect("cross-product generators satisfy su(2)")
}

fn require_phi(phi: f64) -> Result<()> {
    if !(-PHI_SLACK..=FRAC_PI_4 + PHI_SLACK).contains(&phi) {
        return Err(Error::PhiOutOfRange(phi));
    }
    Ok(())
}

/// `max_ω |⟨S_ω⟩| = sin 2φ` for a canonical state, attained at `ω = μ × ν`.
pub fn expectation_magnitude_canonical(phi: f64) -> Result<f64> {
    require_phi(phi)?;
    Ok((2.0 * phi).sin())
}

/// `C = cos 2φ`.
pub fn concurrence_from_phi(phi: f64) -> Result<f64> {
    require_phi(phi)?;
    Ok((2.0 * phi).cos())
}

/// `C = 2|ψ₊₁ψ₋₁ − ψ₀²/2|`.
pub fn concurrence_spherical(psi: &StateVector) -> Result<f64> {
    require_spin1(psi, BasisLabel::Spherical)?;
    let a = psi.amplitudes();
    Ok(2.0 * (a[0] * a[2] - a[1] * a[1] * 0.5).norm())
}

/// An axis `ν` with `S_ν ψ ≈ 0`, present only when `ψ` is CE (`φ ≤ tol`).
pub fn zero_projection_axis(psi: &StateVector, tol: f64) -> Result<Option<Vector3<f64>>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let form = canonical_form(psi)?;
    Ok((form.phi <= tol).then_some(form.mu))
}

/// `|ψ₀⟩ = |0⟩`, `|ψ±⟩ = (|+1⟩ ± |−1⟩)/√2`.
pub fn ce_basis() -> [StateVector; 3] {
    let r = FRAC_1_SQRT_2;
    let mk = |v: [f64; 3]| {
        StateVector::relabel(
            DVector::from_iterator(3, v.iter().map(|&x| C64::new(x, 0.0))),
            BasisLabel::Spherical,
        )
    };
    [mk([0.0, 1.0, 0.0]), mk([r, 0.0, r]), mk([r, 0.0, -r])]
}

/// Applies a real rotation to Cartesian components.
pub fn rotate_cartesian(psi: &StateVector, rotation: &Matrix3<f64>) -> Result<StateVector> {
    require_spin1(psi, BasisLabel::Cartesian)?;
    let a = psi.amplitudes();
    let out = DVector::from_fn(3, |r, _| {
        (0..3).map(|c| a[c] * rotation[(r, c)]).sum::<C64>()
    });
    Ok(StateVector::relabel(out, BasisLabel::Cartesian))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::spin_generators;
    use crate::fluctuations::{expectation, expectation_vector};

    fn cart(v: [(f64, f64); 3]) -> StateVector {
        let amps: Vec<C64> = v.iter().map(|&(re, im)| C64::new(re, im)).collect();
        StateVector::from_slice(&amps, BasisLabel::Cartesian).unwrap()
    }

    fn sph(v: [(f64, f64); 3]) -> StateVector {
        let amps: Vec<C64> = v.iter().map(|&(re, im)| C64::new(re, im)).collect();
        StateVector::from_slice(&amps, BasisLabel::Spherical).unwrap()
    }

    fn close(a: &StateVector, b: &[C64], tol: f64) -> bool {
        a.amplitudes()
            .iter()
            .zip(b)
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn dictionary_examples() {
        let z = to_cartesian(&sph([(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)])).unwrap();
        assert!(close(
            &z,
            &[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            0.0
        ));
        let r = FRAC_1_SQRT_2;
        let x = to_cartesian(&sph([(-r, 0.0), (0.0, 0.0), (r, 0.0)])).unwrap();
        assert!(close(
            &x,
            &[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)],
            1e-15
        ));
        let back = to_spherical(&cart([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])).unwrap();
        assert!(close(
            &back,
            &[C64::new(-r, 0.0), C64::new(0.0, 0.0), C64::new(r, 0.0)],
            1e-15
        ));
        assert!(matches!(
            to_cartesian(&cart([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        let ez = canonical_form(&cart([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])).unwrap();
        assert_eq!(ez.theta, 0.0);
        assert_eq!(ez.phi, 0.0);
        assert_eq!(ez.mu, Vector3::z());
        assert!(!ez.nu_defined);
        assert!(ez.nu.dot(&ez.mu).abs() < 1e-15 && (ez.nu.norm() - 1.0).abs() < 1e-15);

        let r = FRAC_1_SQRT_2;
        let coherent = canonical_form(&cart([(r, 0.0), (0.0, r), (0.0, 0.0)])).unwrap();
        assert!((coherent.phi - FRAC_PI_4).abs() < 1e-15);
        assert!((coherent.mu - Vector3::x()).norm() < 1e-15);
        assert!((coherent.nu - Vector3::y()).norm() < 1e-15);

        let (p, q) = (2.0 / 5f64.sqrt(), 1.0 / 5f64.sqrt());
        let tilted = canonical_form(&cart([(p, 0.0), (0.0, q), (0.0, 0.0)])).unwrap();
        assert!((tilted.concurrence() - 0.6).abs() < 1e-15);
        assert!((tilted.mu - Vector3::x()).norm() < 1e-15);
        assert!((tilted.nu - Vector3::y()).norm() < 1e-15);
        assert!(close(
            &cart([(p, 0.0), (0.0, q), (0.0, 0.0)]),
            &tilted.reconstruct(),
            1e-15
        ));
    }

    #[test]
    fn canonical_handles_imaginary_dominant_input() {
        // i·e_x: w = −1, θ = π/2 and the real part vanishes
        let form = canonical_form(&cart([(0.0, 1.0), (0.0, 0.0), (0.0, 0.0)])).unwrap();
        assert!((form.theta - FRAC_PI_2).abs() < 1e-15);
        assert!(form.phi < 1e-15);
        let rebuilt = form.reconstruct();
        assert!((rebuilt[0] - C64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn projection_operator_matches_spherical_sz() {
        let u = spherical_to_cartesian_matrix();
        let sph_sz = spin_generators(Spin::ONE).elements()[2].matrix().clone();
        let conjugated = &u * sph_sz * u.adjoint();
        let sz = spin_projection_operator(&Vector3::z()).unwrap();
        assert!((conjugated - sz.matrix()).norm() < 1e-14);

        // all three generators agree under the dictionary
        let sph = spin_generators(Spin::ONE);
        for (s, c) in sph.elements().iter().zip(cartesian_generators().elements()) {
            assert!((&u * s.matrix() * u.adjoint() - c.matrix()).norm() < 1e-14);
        }

        // e_x ↦ i e_y under S_z
        let ex = DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]);
        let image = sz.apply(&ex);
        assert!((image[1] - C64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn projection_operator_properties() {
        let omega = Vector3::new(1.0, -2.0, 0.5).normalize();
        let s = spin_projection_operator(&omega).unwrap();
        let own = DVector::from_iterator(3, omega.iter().map(|&x| C64::new(x, 0.0)));
        assert!(s.apply(&own).norm() < 1e-15);

        let mut eig: Vec<f64> = s
            .matrix()
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in eig.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }

        let nu = Vector3::new(0.3, 0.4, -0.2).normalize();
        let nu_state = cart([(nu.x, 0.0), (nu.y, 0.0), (nu.z, 0.0)]);
        assert!(expectation(&nu_state, &s).unwrap().abs() < 1e-15);

        assert!(matches!(
            spin_projection_operator(&Vector3::new(1.0, 1.0, 0.0)),
            Err(Error::NotUnitVector(_))
        ));
    }

    #[test]
    fn canonical_expectation_magnitude() {
        assert_eq!(expectation_magnitude_canonical(0.0).unwrap(), 0.0);
        assert!((expectation_magnitude_canonical(FRAC_PI_4).unwrap() - 1.0).abs() < 1e-15);
        let eighth = std::f64::consts::FRAC_PI_8;
        assert!((expectation_magnitude_canonical(eighth).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(expectation_magnitude_canonical(1.0).is_err());
        assert!(expectation_magnitude_canonical(-0.1).is_err());

        // direct: cos(π/8) e_x + i sin(π/8) e_y
        let (s, c) = eighth.sin_cos();
        let psi = cart([(c, 0.0), (0.0, s), (0.0, 0.0)]);
        let ev = expectation_vector(&psi, &cartesian_generators()).unwrap();
        let norm = ev.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - FRAC_1_SQRT_2).abs() < 1e-15);
        // attained along μ × ν = e_z
        assert!((ev[2] - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn concurrence_examples() {
        let r = FRAC_1_SQRT_2;
        assert_eq!(
            concurrence_spherical(&sph([(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)])).unwrap(),
            1.0
        );
        assert_eq!(
            concurrence_spherical(&sph([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])).unwrap(),
            0.0
        );
        for sign in [1.0, -1.0] {
            let c = concurrence_spherical(&sph([(r, 0.0), (0.0, 0.0), (sign * r, 0.0)])).unwrap();
            assert!((c - 1.0).abs() < 1e-15);
        }
        assert!(concurrence_spherical(&cart([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)])).is_err());

        assert_eq!(concurrence_from_phi(0.0).unwrap(), 1.0);
        assert!(concurrence_from_phi(FRAC_PI_4).unwrap().abs() < 1e-15);
        assert!((concurrence_from_phi(std::f64::consts::FRAC_PI_8).unwrap() - r).abs() < 1e-15);
        assert!(concurrence_from_phi(0.9).is_err());
    }

    #[test]
    fn zero_projection_axis_examples() {
        let ez = cart([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let axis = zero_projection_axis(&ez, 1e-9).unwrap().unwrap();
        assert_eq!(axis, Vector3::z());
        let s = spin_projection_operator(&axis).unwrap();
        assert_eq!(s.apply(ez.amplitudes()).norm(), 0.0);

        let r = FRAC_1_SQRT_2;
        assert!(
            zero_projection_axis(&cart([(r, 0.0), (0.0, r), (0.0, 0.0)]), 1e-9)
                .unwrap()
                .is_none()
        );

        for member in ce_basis() {
            let c = to_cartesian(&member).unwrap();
            let axis = zero_projection_axis(&c, 1e-9).unwrap().expect("CE member");
            let s = spin_projection_operator(&axis).unwrap();
            assert!(s.apply(c.amplitudes()).norm() <= 1e-9);
        }
    }

    #[test]
    fn ce_basis_is_orthonormal_and_maximal() {
        let basis = ce_basis();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let ip = a.inner(b).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C64::new(want, 0.0)).norm() < 1e-15);
            }
            assert!((concurrence_spherical(a).unwrap() - 1.0).abs() < 1e-15);
            let ce =
                crate::fluctuations::is_completely_entangled(a, &spin_generators(Spin::ONE), 1e-10)
                    .unwrap();
            assert!(ce.is_ce);
        }
    }
}
