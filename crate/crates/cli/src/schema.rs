//! JSON state schema: `{"basis": ..., "components": [[re, im], ...]}`.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use spinfluct::{BasisLabel, StateVector, C64};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisName {
    Spherical,
    Cartesian,
    QubitPair,
}

impl From<BasisLabel> for BasisName {
    fn from(label: BasisLabel) -> Self {
        match label {
            BasisLabel::Spherical => BasisName::Spherical,
            BasisLabel::Cartesian => BasisName::Cartesian,
            BasisLabel::QubitPair => BasisName::QubitPair,
        }
    }
}

impl From<BasisName> for BasisLabel {
    fn from(name: BasisName) -> Self {
        match name {
            BasisName::Spherical => BasisLabel::Spherical,
            BasisName::Cartesian => BasisLabel::Cartesian,
            BasisName::QubitPair => BasisLabel::QubitPair,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub basis: BasisName,
    pub components: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn from_state(state: &StateVector) -> Self {
        Self {
            basis: state.basis().into(),
            components: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Validates the state. Unnormalized input is an error unless
    /// `normalize` is set; returns the state and its original norm.
    pub fn to_state(&self, normalize: bool) -> Result<(StateVector, f64), CliError> {
        if self.components.is_empty() {
            return Err(CliError::Input("state has no components".into()));
        }
        if self.components.iter().flatten().any(|x| !x.is_finite()) {
            return Err(CliError::Input("state components must be finite".into()));
        }
        let amps = DVector::from_iterator(
            self.components.len(),
            self.components.iter().map(|&[re, im]| C64::new(re, im)),
        );
        let label = self.basis.into();
        if normalize {
            return Ok(StateVector::normalized(amps, label)?);
        }
        let norm = amps.norm();
        let state = StateVector::new(amps, label).map_err(|_| {
            CliError::Input(format!(
                "state has norm {norm}, not 1; pass --normalize to rescale it"
            ))
        })?;
        Ok((state, norm))
    }
}

/// Accepted input documents: a bare state, or any document carrying one
/// under a top-level `"state"` key (as `convert` and `search` emit).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum InputDocument {
    Bare(StateJson),
    Wrapped { state: StateJson },
}

pub fn parse_state_json(text: &str) -> Result<StateJson, CliError> {
    let doc: InputDocument = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("malformed state JSON: {e}")))?;
    Ok(match doc {
        InputDocument::Bare(s) | InputDocument::Wrapped { state: s } => s,
    })
}
