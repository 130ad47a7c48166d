//! Extremal total variance over the unit sphere of a state space.
//!
//! Maximizers are CE states, minimizers are generalized coherent states.
//! Each restart runs projected gradient ascent (or descent) with Armijo
//! backtracking from a seeded complex-normal start; restarts are
//! independent and reduced in index order, so results do not depend on
//! how they are scheduled.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::algebra::{AlgebraKind, ObservableBasis, Spin};
use crate::error::{Error, Result};
use crate::fluctuations::{moments, total_variance, VarianceBounds};
use crate::state::StateVector;
use crate::C64;

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 60;
/// Objective differences below this many ulps of `V` are rounding noise.
const ROUNDING_SLACK_ULPS: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Maximize,
    Minimize,
}

impl SearchMode {
    fn sign(self) -> f64 {
        match self {
            SearchMode::Maximize => 1.0,
            SearchMode::Minimize => -1.0,
        }
    }

    /// Whether `candidate` beats `incumbent` by more than `margin`.
    fn improves(self, candidate: f64, incumbent: f64, margin: f64) -> bool {
        self.sign() * (candidate - incumbent) > margin
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Stop once `||ψ_{k+1} − ψ_k||` falls below this.
    pub step_tolerance: f64,
    /// ...and `|V_{k+1} − V_k|` falls below this.
    pub value_tolerance: f64,
    pub seed: u64,
    pub mode: SearchMode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iterations: 2000,
            step_tolerance: 1e-12,
            value_tolerance: 1e-11,
            seed: 0,
            mode: SearchMode::Maximize,
        }
    }
}

impl SearchConfig {
    pub fn maximize() -> Self {
        Self::default()
    }

    pub fn minimize() -> Self {
        Self {
            mode: SearchMode::Minimize,
            ..Self::default()
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be positive".into(),
            ));
        }
        for (name, tol) in [
            ("step_tolerance", self.step_tolerance),
            ("value_tolerance", self.value_tolerance),
        ] {
            if !tol.is_finite() || tol <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {tol}"
                )));
            }
        }
        Ok(())
    }
}

/// One restart's trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub state: StateVector,
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Objective after each accepted step, starting with the initial value.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_state: StateVector,
    pub best_value: f64,
    /// Some restart met both stopping tolerances.
    pub converged: bool,
    /// Iterations of the selected restart.
    pub iterations_used: usize,
    pub best_restart: usize,
    pub restart_values: Vec<f64>,
    pub restart_converged: Vec<bool>,
}

/// Gradient of `V(ψ/|ψ|)` at a normalized `ψ`, with the convention that
/// the directional derivative along `δ` is `Re⟨g, δ⟩`:
/// `g = 2 Σ_i [(O_i² − ⟨O_i²⟩)ψ − 2⟨O_i⟩(O_i − ⟨O_i⟩)ψ]`.
pub fn gradient_total_variance(psi: &StateVector, basis: &ObservableBasis) -> Result<DVector<C64>> {
    let moments = moments(psi, basis)?;
    let amps = psi.amplitudes();
    let mut gradient = DVector::<C64>::zeros(amps.len());
    for (observable, &(mean, second)) in basis.elements().iter().zip(&moments) {
        let image = observable.apply(amps);
        let square_image = observable.apply(&image);
        gradient += (square_image - amps.scale(second)).scale(2.0);
        gradient -= (image - amps.scale(mean)).scale(4.0 * mean);
    }
    Ok(gradient)
}

/// Removes the component of `g` along `ψ` (including the phase direction).
pub fn tangent_projection(psi: &StateVector, gradient: &DVector<C64>) -> DVector<C64> {
    let amps = psi.amplitudes();
    gradient - amps * amps.dotc(gradient)
}

/// Seeded complex-normal start on the unit sphere.
pub fn random_start(basis: &ObservableBasis, seed: u64, restart: usize) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ restart as u64);
    random_state(&mut rng, basis.dim(), basis.state_basis())
}

/// Haar-distributed pure state drawn from `rng`.
pub fn random_state<R: rand::Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    label: crate::state::BasisLabel,
) -> StateVector {
    loop {
        let amps = DVector::from_fn(dim, |_, _| {
            C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        if let Ok((state, _)) = StateVector::normalized(amps, label) {
            return state;
        }
    }
}

fn initial_step(basis: &ObservableBasis) -> f64 {
    0.25 / basis.frobenius_weight().max(f64::MIN_POSITIVE)
}

/// Runs one projected-gradient restart from `start`.
pub fn run_restart(
    basis: &ObservableBasis,
    config: &SearchConfig,
    start: StateVector,
) -> Result<RestartOutcome> {
    config.validate()?;
    let sign = config.mode.sign();
    let alpha0 = initial_step(basis);
    let mut psi = start;
    let mut value = total_variance(&psi, basis)?;
    let mut history = vec![value];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < config.max_iterations {
        iterations += 1;
        let direction = tangent_projection(&psi, &gradient_total_variance(&psi, basis)?);
        let slope = direction.norm_squared();
        if slope.sqrt() <= config.step_tolerance {
            converged = true;
            break;
        }
        let slack = ROUNDING_SLACK_ULPS * f64::EPSILON * value.abs().max(1.0);

        let mut alpha = alpha0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial = psi.amplitudes() + direction.scale(sign * alpha);
            let (candidate, _) = StateVector::normalized(trial, psi.basis())?;
            let candidate_value = total_variance(&candidate, basis)?;
            if sign * (candidate_value - value) >= ARMIJO * alpha * slope - slack {
                accepted = Some((candidate, candidate_value));
                break;
            }
            alpha *= 0.5;
        }
        let Some((next, next_value)) = accepted else {
            break;
        };

        let step = (next.amplitudes() - psi.amplitudes()).norm();
        let change = (next_value - value).abs();
        psi = next;
        value = next_value;
        history.push(value);
        if step < config.step_tolerance && change < config.value_tolerance {
            converged = true;
            break;
        }
    }

    Ok(RestartOutcome {
        state: psi,
        value,
        converged,
        iterations,
        history,
    })
}

/// Runs all restarts of `config` and reduces them by restart index.
pub fn search(basis: &ObservableBasis, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let outcomes = (0..config.restarts)
        .into_par_iter()
        .map(|restart| run_restart(basis, config, random_start(basis, config.seed, restart)))
        .collect::<Result<Vec<_>>>()?;

    let mut best = 0;
    for (index, outcome) in outcomes.iter().enumerate().skip(1) {
        if config
            .mode
            .improves(outcome.value, outcomes[best].value, config.value_tolerance)
        {
            best = index;
        }
    }
    let restart_values = outcomes.iter().map(|o| o.value).collect();
    let restart_converged: Vec<bool> = outcomes.iter().map(|o| o.converged).collect();
    let winner = &outcomes[best];
    Ok(SearchResult {
        best_value: total_variance(&winner.state, basis)?,
        best_state: winner.state.clone(),
        converged: restart_converged.iter().any(|&c| c),
        iterations_used: winner.iterations,
        best_restart: best,
        restart_values,
        restart_converged,
    })
}

fn require_mode(config: &SearchConfig, mode: SearchMode) -> Result<()> {
    if config.mode != mode {
        return Err(Error::InvalidConfig(format!(
            "expected mode {mode:?}, got {:?}",
            config.mode
        )));
    }
    Ok(())
}

/// CE states: `max_ψ V(ψ)`.
pub fn maximize_total_variance(
    basis: &ObservableBasis,
    config: &SearchConfig,
) -> Result<SearchResult> {
    require_mode(config, SearchMode::Maximize)?;
    search(basis, config)
}

/// Coherent states: `min_ψ V(ψ)`.
pub fn minimize_total_variance(
    basis: &ObservableBasis,
    config: &SearchConfig,
) -> Result<SearchResult> {
    require_mode(config, SearchMode::Minimize)?;
    search(basis, config)
}

/// Closed-form extremes for the spin-`j` irrep, `V = j(j+1) − |⟨S⟩|²` with
/// `|⟨S⟩| ∈ [0, j]`. `None` for `j = ½`, where `V ≡ ½` is constant.
pub fn irreducible_su2_bounds(spin: Spin) -> Option<VarianceBounds> {
    if spin.twice_j() < 2 {
        return None;
    }
    let j = spin.value();
    VarianceBounds::new(j, spin.casimir_value()).ok()
}

/// Closed-form extremes for the local two-qubit algebra: `V = 1 + C²/2`.
pub fn local_two_qubit_bounds() -> VarianceBounds {
    VarianceBounds::new(1.0, 1.5).expect("ordered bounds")
}

/// Known extremes for the algebras this crate constructs.
pub fn known_bounds(basis: &ObservableBasis) -> Option<VarianceBounds> {
    match basis.kind() {
        AlgebraKind::Su2(spin) => irreducible_su2_bounds(*spin),
        AlgebraKind::LocalTwoQubit => Some(local_two_qubit_bounds()),
        AlgebraKind::Custom(_) => None,
    }
}
