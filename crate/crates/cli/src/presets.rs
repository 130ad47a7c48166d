//! Catalog of named physical states.
//!
//! Superfluid He-3 entries are representative order-parameter components
//! (a `φ = 0` or `φ = π/4` canonical state per component), not fitted
//! amplitudes. Flavor states use the qubit-pair container read as
//! `(u, d) ⊗ (ū, d̄)`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use serde::Serialize;
use spinfluct::{BasisLabel, StateVector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetSystem {
    Spin1,
    TwoQubit,
}

#[derive(Debug, Clone)]
pub struct Preset {
    pub id: &'static str,
    pub description: &'static str,
    pub system: PresetSystem,
    /// `None` for label-only entries.
    pub state: Option<StateVector>,
    pub expected_concurrence: Option<f64>,
    pub expected_ce: Option<bool>,
    /// Canonical angle for spin-1 entries.
    pub expected_phi: Option<f64>,
    pub source_note: &'static str,
}

const R: f64 = FRAC_1_SQRT_2;

fn state(components: &[(f64, f64)], basis: BasisLabel) -> StateVector {
    let amps: Vec<C64> = components
        .iter()
        .map(|&(re, im)| C64::new(re, im))
        .collect();
    StateVector::from_slice(&amps, basis).expect("preset states are normalized")
}

fn spin1_ce(
    id: &'static str,
    description: &'static str,
    s: StateVector,
    note: &'static str,
) -> Preset {
    Preset {
        id,
        description,
        system: PresetSystem::Spin1,
        state: Some(s),
        expected_concurrence: Some(1.0),
        expected_ce: Some(true),
        expected_phi: Some(0.0),
        source_note: note,
    }
}

fn spin1_coherent(
    id: &'static str,
    description: &'static str,
    s: StateVector,
    note: &'static str,
) -> Preset {
    Preset {
        id,
        description,
        system: PresetSystem::Spin1,
        state: Some(s),
        expected_concurrence: Some(0.0),
        expected_ce: Some(false),
        expected_phi: Some(FRAC_PI_4),
        source_note: note,
    }
}

fn two_qubit(
    id: &'static str,
    description: &'static str,
    s: StateVector,
    concurrence: f64,
    note: &'static str,
) -> Preset {
    Preset {
        id,
        description,
        system: PresetSystem::TwoQubit,
        state: Some(s),
        expected_concurrence: Some(concurrence),
        expected_ce: Some(concurrence == 1.0),
        expected_phi: None,
        source_note: note,
    }
}

pub fn catalog() -> Vec<Preset> {
    use BasisLabel::{Cartesian, QubitPair, Spherical};
    let zero = state(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)], Spherical);
    let plus1 = state(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)], Spherical);
    let minus1 = state(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)], Spherical);
    let e_x = state(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)], Cartesian);
    let e_z = state(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)], Cartesian);
    let circular = state(&[(R, 0.0), (0.0, R), (0.0, 0.0)], Cartesian);

    vec![
        spin1_ce(
            "ce-psi0",
            "|m=0⟩, zero spin projection on z",
            zero.clone(),
            "member of the completely entangled spin-1 basis; image of the symmetric EPR pair",
        ),
        spin1_ce(
            "ce-psi-plus",
            "(|+1⟩ + |−1⟩)/√2",
            state(&[(R, 0.0), (0.0, 0.0), (R, 0.0)], Spherical),
            "member of the completely entangled spin-1 basis",
        ),
        spin1_ce(
            "ce-psi-minus",
            "(|+1⟩ − |−1⟩)/√2",
            state(&[(R, 0.0), (0.0, 0.0), (-R, 0.0)], Spherical),
            "member of the completely entangled spin-1 basis",
        ),
        spin1_coherent(
            "coherent-plus1",
            "|m=+1⟩",
            plus1.clone(),
            "spin-1 coherent state; maps to the product |↑↑⟩",
        ),
        spin1_coherent(
            "coherent-minus1",
            "|m=−1⟩",
            minus1,
            "spin-1 coherent state; maps to the product |↓↓⟩",
        ),
        two_qubit(
            "pion-plus",
            "π⁺ = u d̄ in the (u,d)⊗(ū,d̄) flavor reading",
            state(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)], QubitPair),
            0.0,
            "charged pion: product flavor state, coherent with respect to the quarks",
        ),
        two_qubit(
            "pion-minus",
            "π⁻ = ū d in the (u,d)⊗(ū,d̄) flavor reading",
            state(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)], QubitPair),
            0.0,
            "charged pion: product flavor state, coherent with respect to the quarks",
        ),
        two_qubit(
            "pion-zero",
            "π⁰ = (uū − dd̄)/√2",
            state(&[(R, 0.0), (0.0, 0.0), (0.0, 0.0), (-R, 0.0)], QubitPair),
            1.0,
            "neutral pion: completely entangled flavor state",
        ),
        spin1_ce(
            "he3-A-spin",
            "He-3 A phase, Cooper-pair spin part",
            zero.clone(),
            "A phase: spin component completely entangled",
        ),
        spin1_coherent(
            "he3-A-orbital",
            "He-3 A phase, Cooper-pair orbital part",
            plus1.clone(),
            "A phase: orbital component coherent (l_z = +1)",
        ),
        spin1_coherent(
            "he3-beta-spin",
            "He-3 β phase, spin part",
            plus1.clone(),
            "β phase: spin component coherent",
        ),
        spin1_ce(
            "he3-beta-orbital",
            "He-3 β phase, orbital part",
            e_x,
            "β phase: orbital component completely entangled",
        ),
        spin1_ce(
            "he3-polar-spin",
            "He-3 polar phase, spin part",
            zero,
            "polar phase: spin component completely entangled",
        ),
        spin1_ce(
            "he3-polar-orbital",
            "He-3 polar phase, orbital part",
            e_z,
            "polar phase: orbital component completely entangled",
        ),
        spin1_coherent(
            "he3-A1-spin",
            "He-3 A1 phase, spin part",
            plus1,
            "A1 phase: spin component coherent",
        ),
        spin1_coherent(
            "he3-A1-orbital",
            "He-3 A1 phase, orbital part",
            circular,
            "A1 phase: orbital component coherent",
        ),
        Preset {
            id: "he3-B",
            description: "He-3 B phase (label only)",
            system: PresetSystem::Spin1,
            state: None,
            expected_concurrence: None,
            expected_ce: None,
            expected_phi: None,
            source_note: "spin-orbit entangled pair — out of scope",
        },
    ]
}

pub fn find(id: &str) -> Option<Preset> {
    catalog().into_iter().find(|p| p.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_ids_present() {
        let ids: Vec<&str> = catalog().iter().map(|p| p.id).collect();
        for id in [
            "ce-psi0",
            "ce-psi-plus",
            "ce-psi-minus",
            "coherent-plus1",
            "coherent-minus1",
            "pion-plus",
            "pion-minus",
            "pion-zero",
            "he3-A-spin",
            "he3-A-orbital",
            "he3-beta-spin",
            "he3-beta-orbital",
            "he3-polar-spin",
            "he3-polar-orbital",
            "he3-A1-spin",
            "he3-A1-orbital",
            "he3-B",
        ] {
            assert!(ids.contains(&id), "missing {id}");
        }
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn dimensions_match_systems() {
        for p in catalog() {
            if let Some(s) = &p.state {
                let want = match p.system {
                    PresetSystem::Spin1 => 3,
                    PresetSystem::TwoQubit => 4,
                };
                assert_eq!(s.dim(), want, "{}", p.id);
            }
        }
        assert!(find("he3-B").unwrap().state.is_none());
        assert!(find("nope").is_none());
    }
}
