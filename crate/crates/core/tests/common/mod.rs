#![allow(dead_code)]

use nalgebra::{DVector, Matrix3, Rotation3, Unit, Vector3};
use proptest::prelude::*;
use spinfluct::{BasisLabel, StateVector, C64};

pub fn state_strategy(dim: usize, label: BasisLabel) -> impl Strategy<Value = StateVector> {
    prop::collection::vec(-1.0..1.0f64, 2 * dim).prop_filter_map("near-zero vector", move |raw| {
        let amps = DVector::from_fn(dim, |k, _| C64::new(raw[2 * k], raw[2 * k + 1]));
        (amps.norm() > 1e-3).then(|| StateVector::normalized(amps, label).unwrap().0)
    })
}

pub fn rotation_strategy() -> impl Strategy<Value = Matrix3<f64>> {
    (
        -1.0..1.0f64,
        -1.0..1.0f64,
        -1.0..1.0f64,
        0.0..std::f64::consts::TAU,
    )
        .prop_filter_map("degenerate axis", |(x, y, z, angle)| {
            let axis = Vector3::new(x, y, z);
            (axis.norm() > 1e-3)
                .then(|| *Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle).matrix())
        })
}

pub fn cart(v: [C64; 3]) -> StateVector {
    StateVector::from_slice(&v, BasisLabel::Cartesian).unwrap()
}

/// `cos φ·μ + i sin φ·ν` for orthonormal real `μ, ν`.
pub fn canonical_state(phi: f64, mu: Vector3<f64>, nu: Vector3<f64>) -> StateVector {
    let (s, c) = phi.sin_cos();
    cart([0, 1, 2].map(|k| C64::new(c * mu[k], s * nu[k])))
}
