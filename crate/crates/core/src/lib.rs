//! Entanglement of pure quantum states measured as quantum fluctuations of
//! an algebra of essential observables.
//!
//! The total variance `V(ψ) = Σ_i (⟨O_i²⟩ − ⟨O_i⟩²)` over a basis of the
//! observable algebra is maximal on completely entangled (CE) states, where
//! every observable has zero mean, and minimal on generalized coherent
//! states. For a single spin-1 system this gives a full classification by
//! one rotation-invariant angle `φ` and a concurrence `C = cos 2φ`, which
//! [`spin1`] and [`twoqubit`] compute by independent routes.

pub mod algebra;
pub mod error;
pub mod fluctuations;
pub mod spin1;
pub mod state;
pub mod twoqubit;
pub mod variational;

pub use algebra::{AlgebraKind, Observable, ObservableBasis, Spin};
pub use error::{Error, Result};
pub use fluctuations::{CeVerdict, FluctuationReport, VarianceBounds};
pub use spin1::CanonicalForm;
pub use state::{BasisLabel, StateVector};
pub use twoqubit::{SectorDecomposition, TwoQubitState};
pub use variational::{SearchConfig, SearchMode, SearchResult};

/// Complex amplitude type used throughout.
pub type C64 = nalgebra::Complex<f64>;

/// Tolerance for Hermiticity and normalization on construction.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-12;
