//! The `analyze` document: fluctuation report, canonical form, CE verdict
//! and cross-checked concurrences.

use serde::{Deserialize, Serialize};
use spinfluct::algebra::{local_two_qubit_basis, spin_generators};
use spinfluct::fluctuations::is_completely_entangled;
use spinfluct::spin1::{
    canonical_form, concurrence_from_phi, concurrence_spherical, to_cartesian, to_spherical,
    zero_projection_axis,
};
use spinfluct::twoqubit::{decompose, embed_symmetric, pure_concurrence};
use spinfluct::variational::{irreducible_su2_bounds, local_two_qubit_bounds};
use spinfluct::{
    BasisLabel, FluctuationReport, ObservableBasis, Spin, StateVector, TwoQubitState,
    VarianceBounds,
};

use crate::error::CliError;
use crate::schema::{StateJson, SCHEMA_VERSION};

/// Pairwise agreement required between concurrence routes.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum System {
    Spin1,
    TwoQubit,
}

impl System {
    pub fn infer(basis: BasisLabel) -> Self {
        match basis {
            BasisLabel::QubitPair => System::TwoQubit,
            BasisLabel::Spherical | BasisLabel::Cartesian => System::Spin1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            System::Spin1 => "spin1",
            System::TwoQubit => "two-qubit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub state: StateJson,
    pub original_norm: f64,
    pub normalized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Representations {
    pub spherical: StateJson,
    pub cartesian: StateJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluctuationSection {
    pub algebra: String,
    pub expectations: Vec<f64>,
    pub v_tot: f64,
    pub v_min: Option<f64>,
    pub v_max: Option<f64>,
    pub ce_residual: f64,
    pub concurrence_variance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalSection {
    pub theta: f64,
    pub phi: f64,
    pub mu: [f64; 3],
    pub nu: [f64; 3],
    pub nu_defined: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodValue {
    pub method: String,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaScale {
    /// `|C_a − C_b|`.
    Linear,
    /// `|C_a² − C_b²|`, used when one side is the variance route.
    Squared,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub a: String,
    pub b: String,
    pub scale: DeltaScale,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceSection {
    pub values: Vec<MethodValue>,
    pub deltas: Vec<Delta>,
    pub cross_check_tolerance: f64,
    pub consistent: bool,
}

impl ConcurrenceSection {
    pub fn value(&self, method: &str) -> Option<f64> {
        self.values
            .iter()
            .find(|m| m.method == method)
            .map(|m| m.value)
    }

    /// The headline concurrence: first listed method.
    pub fn primary(&self) -> f64 {
        self.values[0].value
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CeSection {
    pub verdict: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub zero_projection_axis: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorSection {
    pub symmetric_weight: f64,
    pub antisymmetric_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetCheck {
    pub id: String,
    pub expected_concurrence: Option<f64>,
    pub expected_ce: Option<bool>,
    pub expected_phi: Option<f64>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema_version: u32,
    pub command: String,
    pub system: System,
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub representations: Option<Representations>,
    pub fluctuations: FluctuationSection,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical_form: Option<CanonicalSection>,
    pub concurrence: ConcurrenceSection,
    pub ce: CeSection,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sectors: Option<SectorSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preset: Option<PresetCheck>,
    /// False when a cross-check or preset expectation failed.
    pub consistent: bool,
}

fn fluctuation_section(
    state: &StateVector,
    basis: &ObservableBasis,
    bounds: Option<VarianceBounds>,
) -> Result<FluctuationSection, CliError> {
    let report = FluctuationReport::compute(state, basis, bounds)?;
    Ok(FluctuationSection {
        algebra: basis.label(),
        expectations: report.expectations,
        v_tot: report.v_tot,
        v_min: report.bounds.map(|b| b.v_min()),
        v_max: report.bounds.map(|b| b.v_max()),
        ce_residual: report.ce_residual,
        concurrence_variance: report.concurrence_variance,
    })
}

const VARIANCE_METHOD: &str = "variance";

fn concurrence_section(values: Vec<MethodValue>) -> ConcurrenceSection {
    let mut deltas = Vec::new();
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let squared = a.method == VARIANCE_METHOD || b.method == VARIANCE_METHOD;
            let (scale, delta) = if squared {
                (
                    DeltaScale::Squared,
                    (a.value * a.value - b.value * b.value).abs(),
                )
            } else {
                (DeltaScale::Linear, (a.value - b.value).abs())
            };
            deltas.push(Delta {
                a: a.method.clone(),
                b: b.method.clone(),
                scale,
                delta,
            });
        }
    }
    let consistent = deltas.iter().all(|d| d.delta <= CROSS_CHECK_TOLERANCE);
    ConcurrenceSection {
        values,
        deltas,
        cross_check_tolerance: CROSS_CHECK_TOLERANCE,
        consistent,
    }
}

fn method(name: &str, value: f64) -> MethodValue {
    MethodValue {
        method: name.to_string(),
        value,
    }
}

/// Builds the analysis document for a validated state.
pub fn analyze(
    state: &StateVector,
    original_norm: f64,
    normalized: bool,
    system: Option<System>,
    tol: f64,
) -> Result<AnalysisDocument, CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Input(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let system = system.unwrap_or_else(|| System::infer(state.basis()));
    let input = InputEcho {
        state: StateJson::from_state(state),
        original_norm,
        normalized,
    };
    match system {
        System::Spin1 => analyze_spin1(state, input, tol),
        System::TwoQubit => analyze_two_qubit(state, input, tol),
    }
}

fn analyze_spin1(
    state: &StateVector,
    input: InputEcho,
    tol: f64,
) -> Result<AnalysisDocument, CliError> {
    if state.dim() != 3 {
        return Err(CliError::Input(format!(
            "spin1 states have 3 components, got {}",
            state.dim()
        )));
    }
    let (spherical, cartesian) = match state.basis() {
        BasisLabel::Spherical => (state.clone(), to_cartesian(state)?),
        BasisLabel::Cartesian => (to_spherical(state)?, state.clone()),
        BasisLabel::QubitPair => {
            return Err(CliError::Input(
                "spin1 analysis needs a spherical or cartesian state".into(),
            ))
        }
    };

    let basis = spin_generators(Spin::ONE);
    let fluctuations = fluctuation_section(&spherical, &basis, irreducible_su2_bounds(Spin::ONE))?;
    let form = canonical_form(&cartesian)?;
    let mut values = vec![
        method("spherical", concurrence_spherical(&spherical)?),
        method("canonical-phi", concurrence_from_phi(form.phi)?),
    ];
    if let Some(c) = fluctuations.concurrence_variance {
        values.push(method(VARIANCE_METHOD, c));
    }
    values.push(method(
        "determinant",
        pure_concurrence(&embed_symmetric(&spherical)?),
    ));
    let concurrence = concurrence_section(values);

    let verdict = is_completely_entangled(&spherical, &basis, tol)?;
    let axis = zero_projection_axis(&cartesian, tol)?;
    let consistent = concurrence.consistent;
    Ok(AnalysisDocument {
        schema_version: SCHEMA_VERSION,
        command: "analyze".into(),
        system: System::Spin1,
        input,
        representations: Some(Representations {
            spherical: StateJson::from_state(&spherical),
            cartesian: StateJson::from_state(&cartesian),
        }),
        fluctuations,
        canonical_form: Some(CanonicalSection {
            theta: form.theta,
            phi: form.phi,
            mu: form.mu.into(),
            nu: form.nu.into(),
            nu_defined: form.nu_defined,
        }),
        concurrence,
        ce: CeSection {
            verdict: verdict.is_ce,
            residual: verdict.residual,
            tolerance: tol,
            zero_projection_axis: axis.map(Into::into),
        },
        sectors: None,
        preset: None,
        consistent,
    })
}

fn analyze_two_qubit(
    state: &StateVector,
    input: InputEcho,
    tol: f64,
) -> Result<AnalysisDocument, CliError> {
    if state.basis() != BasisLabel::QubitPair || state.dim() != 4 {
        return Err(CliError::Input(
            "two-qubit analysis needs a 4-component qubit-pair state".into(),
        ));
    }
    let chi = TwoQubitState::from_state(state.clone())?;
    let basis = local_two_qubit_basis();
    let fluctuations = fluctuation_section(state, &basis, Some(local_two_qubit_bounds()))?;
    let mut values = vec![method("determinant", pure_concurrence(&chi))];
    if let Some(c) = fluctuations.concurrence_variance {
        values.push(method(VARIANCE_METHOD, c));
    }
    let concurrence = concurrence_section(values);
    let verdict = is_completely_entangled(state, &basis, tol)?;
    let parts = decompose(&chi);
    let consistent = concurrence.consistent;
    Ok(AnalysisDocument {
        schema_version: SCHEMA_VERSION,
        command: "analyze".into(),
        system: System::TwoQubit,
        input,
        representations: None,
        fluctuations,
        canonical_form: None,
        concurrence,
        ce: CeSection {
            verdict: verdict.is_ce,
            residual: verdict.residual,
            tolerance: tol,
            zero_projection_axis: None,
        },
        sectors: Some(SectorSection {
            symmetric_weight: parts.symmetric_weight(),
            antisymmetric_weight: parts.antisymmetric_weight(),
        }),
        preset: None,
        consistent,
    })
}

/// Attaches a preset's expectations and folds the comparison into
/// `consistent`.
pub fn check_preset(doc: &mut AnalysisDocument, preset: &crate::presets::Preset) {
    let c = doc.concurrence.primary();
    let concurrence_ok = preset
        .expected_concurrence
        .is_none_or(|want| (c - want).abs() <= CROSS_CHECK_TOLERANCE);
    let ce_ok = preset.expected_ce.is_none_or(|want| doc.ce.verdict == want);
    let phi_ok = match (preset.expected_phi, &doc.canonical_form) {
        (Some(want), Some(form)) => (form.phi - want).abs() <= CROSS_CHECK_TOLERANCE,
        _ => true,
    };
    let matches = concurrence_ok && ce_ok && phi_ok;
    doc.preset = Some(PresetCheck {
        id: preset.id.to_string(),
        expected_concurrence: preset.expected_concurrence,
        expected_ce: preset.expected_ce,
        expected_phi: preset.expected_phi,
        matches,
    });
    doc.consistent &= matches;
}

#[cfg(test)]
mod tests {
    use super::*;
    use spinfluct::C64;

    fn sph(v: [f64; 3]) -> StateVector {
        StateVector::from_slice(&v.map(|x| C64::new(x, 0.0)), BasisLabel::Spherical).unwrap()
    }

    #[test]
    fn ce_state_document() {
        let doc = analyze(&sph([0.0, 1.0, 0.0]), 1.0, false, None, 1e-9).unwrap();
        assert_eq!(doc.system, System::Spin1);
        assert_eq!(doc.concurrence.values.len(), 4);
        for m in &doc.concurrence.values {
            assert!((m.value - 1.0).abs() < 1e-12, "{}: {}", m.method, m.value);
        }
        assert!(doc.consistent && doc.ce.verdict);
        assert!(doc.ce.zero_projection_axis.is_some());
        assert_eq!(doc.concurrence.deltas.len(), 6);
    }

    #[test]
    fn coherent_state_document() {
        let doc = analyze(&sph([1.0, 0.0, 0.0]), 1.0, false, None, 1e-9).unwrap();
        assert!(doc.consistent, "{:?}", doc.concurrence.deltas);
        assert_eq!(doc.concurrence.value("spherical"), Some(0.0));
        assert!(!doc.ce.verdict);
        assert_eq!(doc.ce.residual, 1.0);
        assert!(doc.ce.zero_projection_axis.is_none());
    }

    #[test]
    fn system_mismatch_is_rejected() {
        let state = sph([1.0, 0.0, 0.0]);
        assert!(analyze(&state, 1.0, false, Some(System::TwoQubit), 1e-9).is_err());
        assert!(analyze(&state, 1.0, false, None, 0.0).is_err());
    }

    #[test]
    fn squared_scale_for_variance_pairs() {
        let section = concurrence_section(vec![method("a", 0.0), method(VARIANCE_METHOD, 2e-8)]);
        assert_eq!(section.deltas[0].scale, DeltaScale::Squared);
        assert!(section.consistent);
        let section = concurrence_section(vec![method("a", 0.0), method("b", 2e-8)]);
        assert!(!section.consistent);
    }
}
