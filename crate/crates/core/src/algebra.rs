//! Observable algebras: spin-j generators, the local two-qubit algebra and
//! their Casimir element.

use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix3};

use crate::error::{Error, Result};
use crate::state::BasisLabel;
use crate::{C64, CONSTRUCTION_TOLERANCE};

/// Tolerance on the su(2) commutation relations of a generator triple.
pub const COMMUTATION_TOLERANCE: f64 = 1e-10;

/// Tolerance on `RᵀR = I` for basis rotations.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

/// A spin quantum number `j`, stored as the positive integer `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spin {
    twice_j: u32,
}

impl Spin {
    pub const HALF: Spin = Spin { twice_j: 1 };
    pub const ONE: Spin = Spin { twice_j: 2 };

    pub fn new(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice < 1.0 || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(Error::InvalidSpin(j));
        }
        Ok(Self {
            twice_j: twice as u32,
        })
    }

    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::InvalidSpin(0.0));
        }
        Ok(Self { twice_j })
    }

    pub fn twice_j(self) -> u32 {
        self.twice_j
    }

    pub fn value(self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// `2j + 1`.
    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// Eigenvalue `j(j+1)` of the Casimir element.
    pub fn casimir_value(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j.is_multiple_of(2) {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

impl std::str::FromStr for Spin {
    type Err = Error;

    /// Accepts `"1"`, `"1.5"` or `"3/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidSpin(f64::NAN);
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "2" => Spin::from_twice(num),
                "1" => Spin::from_twice(num.checked_mul(2).ok_or_else(bad)?),
                _ => Err(bad()),
            }
        } else {
            Spin::new(s.parse().map_err(|_| bad())?)
        }
    }
}

/// Hermitian operator on a finite-dimensional state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: DMatrix<C64>,
}

impl Observable {
    /// Rejects non-square or non-Hermitian input (tolerance `1e-12`); the
    /// matrix is never symmetrized.
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                actual: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::EmptyBasis);
        }
        let deviation = hermitian_deviation(&matrix);
        if deviation > CONSTRUCTION_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    pub fn square(&self) -> DMatrix<C64> {
        &self.matrix * &self.matrix
    }

    /// `tr(A B)`; real for Hermitian `A`, `B`.
    pub fn trace_product(&self, other: &Observable) -> C64 {
        (&self.matrix * &other.matrix).trace()
    }

    pub(crate) fn from_trusted(matrix: DMatrix<C64>) -> Self {
        Self { matrix }
    }
}

/// Which algebra an [`ObservableBasis`] spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraKind {
    /// `{S_x, S_y, S_z}` of the spin-`j` irrep.
    Su2(Spin),
    /// `{s_a ⊗ I, I ⊗ s_a}`.
    LocalTwoQubit,
    Custom(String),
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Su2(spin) => write!(f, "su2-spin-{spin}"),
            AlgebraKind::LocalTwoQubit => f.write_str("local-2qubit"),
            AlgebraKind::Custom(label) => f.write_str(label),
        }
    }
}

/// Ordered measurement basis `{O_i}` of an observable algebra, bound to
/// the state basis its matrices are written in.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableBasis {
    elements: Vec<Observable>,
    kind: AlgebraKind,
    state_basis: BasisLabel,
}

impl ObservableBasis {
    pub fn new(
        elements: Vec<Observable>,
        kind: AlgebraKind,
        state_basis: BasisLabel,
    ) -> Result<Self> {
        let first = elements.first().ok_or(Error::EmptyBasis)?;
        let dim = first.dim();
        for element in &elements {
            if element.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: element.dim(),
                });
            }
        }
        if let AlgebraKind::Su2(spin) = &kind {
            if elements.len() != 3 {
                return Err(Error::NotThreeDimensional(elements.len()));
            }
            if dim != spin.dim() {
                return Err(Error::DimensionMismatch {
                    expected: spin.dim(),
                    actual: dim,
                });
            }
            let deviation = su2_commutation_deviation(&elements);
            if deviation > COMMUTATION_TOLERANCE {
                return Err(Error::CommutationViolated { deviation });
            }
        }
        Ok(Self {
            elements,
            kind,
            state_basis,
        })
    }

    pub fn elements(&self) -> &[Observable] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }

    pub fn state_basis(&self) -> BasisLabel {
        self.state_basis
    }

    /// `Σ_i ||O_i||_F²`, a scale for step sizes.
    pub fn frobenius_weight(&self) -> f64 {
        self.elements
            .iter()
            .map(|o| o.matrix().norm_squared())
            .sum()
    }
}

/// Spin generators `S_x, S_y, S_z` of the spin-`j` irrep in the `S_z`
/// eigenbasis ordered `m = j, j−1, …, −j`, Condon-Shortley phases.
pub fn spin_generators(spin: Spin) -> ObservableBasis {
    let dim = spin.dim();
    let j = spin.value();
    let m = |k: usize| j - k as f64;

    // raising operator: S+|m⟩ = sqrt(j(j+1) − m(m+1)) |m+1⟩, index k → k−1
    let mut raise = DMatrix::<C64>::zeros(dim, dim);
    for k in 1..dim {
        let mk = m(k);
        raise[(k - 1, k)] = C64::new((j * (j + 1.0) - mk * (mk + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();
    let sx = (&raise + &lower).scale(0.5);
    let sy = (&raise - &lower) * C64::new(0.0, -0.5);
    let sz = DMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::new(m(r), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });

    ObservableBasis {
        elements: vec![
            Observable::from_trusted(sx),
            Observable::from_trusted(sy),
            Observable::from_trusted(sz),
        ],
        kind: AlgebraKind::Su2(spin),
        state_basis: BasisLabel::Spherical,
    }
}

/// The six local observables `s_a ⊗ I, I ⊗ s_a` (`a = x, y, z`) on two
/// qubits ordered `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`.
pub fn local_two_qubit_basis() -> ObservableBasis {
    let single = spin_generators(Spin::HALF);
    let identity = DMatrix::<C64>::identity(2, 2);
    let mut elements = Vec::with_capacity(6);
    for s in single.elements() {
        elements.push(Observable::from_trusted(s.matrix().kronecker(&identity)));
    }
    for s in single.elements() {
        elements.push(Observable::from_trusted(identity.kronecker(s.matrix())));
    }
    ObservableBasis {
        elements,
        kind: AlgebraKind::LocalTwoQubit,
        state_basis: BasisLabel::QubitPair,
    }
}

/// `Σ_i O_i²`.
pub fn casimir(basis: &ObservableBasis) -> Observable {
    let dim = basis.dim();
    let sum = basis
        .elements()
        .iter()
        .fold(DMatrix::<C64>::zeros(dim, dim), |acc, o| acc + o.square());
    Observable::from_trusted(sum)
}

/// Recombines a three-element basis as `O'_a = Σ_b R_ab O_b` for a real
/// orthogonal `R`. Improper rotations (det R = −1) flip the orientation of
/// the commutation relations, so the result is relabeled as a custom
/// algebra in that case.
pub fn rotate_basis(basis: &ObservableBasis, rotation: &Matrix3<f64>) -> Result<ObservableBasis> {
    if basis.len() != 3 {
        return Err(Error::NotThreeDimensional(basis.len()));
    }
    let deviation = (rotation.transpose() * rotation - Matrix3::identity()).amax();
    if deviation > ORTHOGONALITY_TOLERANCE {
        return Err(Error::NotOrthogonal { deviation });
    }
    let dim = basis.dim();
    let elements = (0..3)
        .map(|a| {
            let matrix = (0..3).fold(DMatrix::<C64>::zeros(dim, dim), |acc, b| {
                acc + basis.elements[b].matrix().scale(rotation[(a, b)])
            });
            Observable::from_trusted(matrix)
        })
        .collect();
    let kind = if rotation.determinant() > 0.0 {
        basis.kind.clone()
    } else {
        AlgebraKind::Custom(format!("{}-reflected", basis.kind))
    };
    Ok(ObservableBasis {
        elements,
        kind,
        state_basis: basis.state_basis,
    })
}

fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Max entrywise deviation from `[S_a, S_b] = i ε_abc S_c`.
pub(crate) fn su2_commutation_deviation(elements: &[Observable]) -> f64 {
    let i = C64::new(0.0, 1.0);
    [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        .iter()
        .map(|&(a, b, c)| {
            let (sa, sb, sc) = (
                elements[a].matrix(),
                elements[b].matrix(),
                elements[c].matrix(),
            );
            let residual = sa * sb - sb * sa - sc * i;
            residual.iter().map(|z| z.norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
