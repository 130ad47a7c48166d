//! Expected values computed by routes independent of the library's own
//! algorithms: dense sampling, finite differences and direct evaluation.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use nalgebra::{DVector, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinfluct::algebra::{local_two_qubit_basis, spin_generators};
use spinfluct::fluctuations::{
    expectation_vector, is_completely_entangled, total_variance, variance_concurrence,
};
use spinfluct::spin1::{canonical_form, cartesian_generators};
use spinfluct::variational::{
    gradient_total_variance, maximize_total_variance, minimize_total_variance, random_state,
    tangent_projection,
};
use spinfluct::{
    BasisLabel, ObservableBasis, SearchConfig, Spin, StateVector, VarianceBounds, C64,
};

use common::canonical_state;

/// Total variance of the canonical family over a fine φ grid.
fn sampled_canonical_variances(samples: usize) -> Vec<(f64, f64)> {
    let basis = cartesian_generators();
    (0..=samples)
        .map(|k| {
            let phi = FRAC_PI_4 * k as f64 / samples as f64;
            let psi = canonical_state(phi, Vector3::x(), Vector3::y());
            (phi, total_variance(&psi, &basis).unwrap())
        })
        .collect()
}

#[test]
fn canonical_family_oracle_brackets_spin_one_extremes() {
    let samples = sampled_canonical_variances(4000);
    let max = samples.iter().map(|s| s.1).fold(f64::MIN, f64::max);
    let min = samples.iter().map(|s| s.1).fold(f64::MAX, f64::min);
    assert!((max - 2.0).abs() < 1e-12);
    assert!((min - 1.0).abs() < 1e-12);
    // V = 2 − sin² 2φ along the whole family
    for (phi, v) in samples {
        assert!((v - (2.0 - (2.0 * phi).sin().powi(2))).abs() < 1e-12);
    }

    let basis = spin_generators(Spin::ONE);
    let max = maximize_total_variance(&basis, &SearchConfig::maximize()).unwrap();
    assert!((max.best_value - 2.0).abs() < 1e-8);
    let min = minimize_total_variance(&basis, &SearchConfig::minimize()).unwrap();
    assert!((min.best_value - 1.0).abs() < 1e-8);
    let cart = spinfluct::spin1::to_cartesian(&min.best_state).unwrap();
    let phi = canonical_form(&cart).unwrap().phi;
    assert!((phi - FRAC_PI_4).abs() < 1e-6, "φ = {phi}");
}

#[test]
fn expectation_magnitude_is_sin_two_phi() {
    let basis = cartesian_generators();
    let mu: Vector3<f64> = Vector3::new(1.0, 2.0, 2.0) / 3.0;
    let nu = Vector3::new(2.0, 1.0, -2.0) / 3.0;
    assert!(mu.dot(&nu).abs() < 1e-15);
    for k in 0..=64 {
        let phi = FRAC_PI_4 * k as f64 / 64.0;
        let ev = expectation_vector(&canonical_state(phi, mu, nu), &basis).unwrap();
        let norm = ev.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - (2.0 * phi).sin()).abs() < 1e-12);
        // direction μ × ν
        let axis = mu.cross(&nu);
        let along: f64 = ev.iter().zip(axis.iter()).map(|(a, b)| a * b).sum();
        assert!((along - norm).abs() < 1e-12);

        let bounds = VarianceBounds::new(1.0, 2.0).unwrap();
        let c = variance_concurrence(&canonical_state(phi, mu, nu), &basis, bounds).unwrap();
        assert!((c - (2.0 * phi).cos()).abs() < 1e-7);
    }
}

#[test]
fn spin_half_objective_is_constant() {
    let basis = spin_generators(Spin::HALF);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let psi = random_state(&mut rng, 2, BasisLabel::Spherical);
        assert!((total_variance(&psi, &basis).unwrap() - 0.5).abs() < 1e-12);
    }
    let r = maximize_total_variance(&basis, &SearchConfig::maximize()).unwrap();
    assert!(r.converged && (r.best_value - 0.5).abs() < 1e-10);
    let r = minimize_total_variance(&basis, &SearchConfig::minimize()).unwrap();
    assert!(r.converged && (r.best_value - 0.5).abs() < 1e-10);
}

#[test]
fn spin_three_halves_maximum_matches_candidate() {
    let basis = spin_generators(Spin::from_twice(3).unwrap());
    let z = C64::new(0.0, 0.0);
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let candidate = StateVector::from_slice(&[r, z, z, r], BasisLabel::Spherical).unwrap();
    assert!((total_variance(&candidate, &basis).unwrap() - 3.75).abs() < 1e-12);

    let found = maximize_total_variance(&basis, &SearchConfig::maximize()).unwrap();
    assert!(found.converged);
    assert!(
        (found.best_value - 3.75).abs() < 1e-8,
        "{}",
        found.best_value
    );
    assert!(
        is_completely_entangled(&found.best_state, &basis, 1e-8)
            .unwrap()
            .is_ce
    );

    let low = minimize_total_variance(&basis, &SearchConfig::minimize()).unwrap();
    // j(j+1) − j²
    assert!((low.best_value - 1.5).abs() < 1e-7, "{}", low.best_value);
}

/// Brute-force sampling of the two-qubit local objective.
#[test]
fn two_qubit_extremes_against_sampling() {
    let basis = local_two_qubit_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for _ in 0..20_000 {
        let psi = random_state(&mut rng, 4, BasisLabel::QubitPair);
        let v = total_variance(&psi, &basis).unwrap();
        lo = lo.min(v);
        hi = hi.max(v);
    }
    assert!((1.0 - 1e-12..1.01).contains(&lo), "sampled min {lo}");
    assert!(hi <= 1.5 + 1e-12 && hi > 1.49, "sampled max {hi}");

    let up_up = StateVector::basis_state(4, 0, BasisLabel::QubitPair);
    assert_eq!(total_variance(&up_up, &basis).unwrap(), 1.0);
    let singlet = spinfluct::twoqubit::singlet();
    assert!((total_variance(singlet.state(), &basis).unwrap() - 1.5).abs() < 1e-15);

    let max = maximize_total_variance(&basis, &SearchConfig::maximize()).unwrap();
    assert!(max.converged);
    assert!((max.best_value - 1.5).abs() < 1e-7, "{}", max.best_value);
    assert!(
        is_completely_entangled(&max.best_state, &basis, 1e-8)
            .unwrap()
            .is_ce
    );
    let min = minimize_total_variance(&basis, &SearchConfig::minimize()).unwrap();
    assert!((min.best_value - 1.0).abs() < 1e-7, "{}", min.best_value);
    let chi = spinfluct::TwoQubitState::from_state(min.best_state).unwrap();
    assert!(spinfluct::twoqubit::pure_concurrence(&chi) < 1e-4);
}

fn normalized_variance(psi: &DVector<C64>, basis: &ObservableBasis) -> f64 {
    let (state, _) = StateVector::normalized(psi.clone(), basis.state_basis()).unwrap();
    total_variance(&state, basis).unwrap()
}

fn finite_difference_check(basis: &ObservableBasis, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-6;
    for _ in 0..100 {
        let psi = random_state(&mut rng, basis.dim(), basis.state_basis());
        let delta = random_state(&mut rng, basis.dim(), basis.state_basis()).into_amplitudes();
        let g = gradient_total_variance(&psi, basis).unwrap();
        let analytic = g.dotc(&delta).re;
        let plus = normalized_variance(&(psi.amplitudes() + delta.scale(h)), basis);
        let minus = normalized_variance(&(psi.amplitudes() - delta.scale(h)), basis);
        let fd = (plus - minus) / (2.0 * h);
        let scale = g.norm() * delta.norm();
        assert!((analytic - fd).abs() <= 1e-5 * scale, "{analytic} vs {fd}");
        assert!((analytic - fd).abs() <= 1e-5, "{analytic} vs {fd}");
    }
}

#[test]
fn gradient_matches_central_differences() {
    finite_difference_check(&spin_generators(Spin::ONE), 1);
    finite_difference_check(&local_two_qubit_basis(), 2);
    finite_difference_check(&spin_generators(Spin::from_twice(3).unwrap()), 3);
}

#[test]
fn gradient_vanishes_at_extremes() {
    let basis = spin_generators(Spin::ONE);
    for idx in [0, 1] {
        let psi = StateVector::basis_state(3, idx, BasisLabel::Spherical);
        let g = tangent_projection(&psi, &gradient_total_variance(&psi, &basis).unwrap());
        assert!(g.norm() <= 1e-10);
    }
}
