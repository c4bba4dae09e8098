use num::{BigInt, One, Zero};

use super::linalg::{self, IntMatrix};
use super::{LatticeVector, Side};
use crate::error::{Error, Result};

/// The torsion-free quotient `N_τ = N / (N ∩ span τ)`, with chosen coordinates.
///
/// The rows of `projection` are the Hermite basis of `τ^⊥ ∩ M`, so the
/// coordinates of a projected point are its pairings with that basis. The
/// `section` picks a lift in `N` for every point of `N_τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientLattice {
    ambient_dim: usize,
    subspace_basis: Vec<LatticeVector>,
    projection: IntMatrix,
    section: IntMatrix,
}

/// Builds the quotient of `ℤ^ambient_dim` by the saturation of the span of
/// linearly independent `N`-side generators.
pub fn quotient_lattice(ambient_dim: usize, generators: &[LatticeVector]) -> Result<QuotientLattice> {
    for g in generators {
        if g.side() != Side::N {
            return Err(Error::SideMismatch("quotient generators must lie in N".into()));
        }
        if g.dim() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: g.dim(),
            });
        }
    }
    let rows: IntMatrix = generators.iter().map(|g| g.coords().to_vec()).collect();
    if linalg::rank(&rows) != rows.len() {
        return Err(Error::DependentGenerators);
    }
    let projection = if rows.is_empty() {
        linalg::identity(ambient_dim)
    } else {
        linalg::integer_kernel(&rows, ambient_dim)
    };
    let codim = projection.len();
    let section = if codim == 0 {
        vec![Vec::new(); ambient_dim]
    } else {
        let pt = linalg::transpose(&projection, ambient_dim);
        let herm = linalg::hermite_rows(&pt, codim);
        for i in 0..codim {
            for j in 0..codim {
                let expected = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(herm.h[i][j], expected, "projection rows span a non-saturated lattice");
            }
        }
        (0..ambient_dim)
            .map(|i| (0..codim).map(|j| herm.u[j][i].clone()).collect())
            .collect()
    };
    Ok(QuotientLattice {
        ambient_dim,
        subspace_basis: generators.to_vec(),
        projection,
        section,
    })
}

impl QuotientLattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Rank of `N_τ`.
    pub fn codim(&self) -> usize {
        self.projection.len()
    }

    pub fn subspace_basis(&self) -> &[LatticeVector] {
        &self.subspace_basis
    }

    pub fn projection_matrix(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn section_matrix(&self) -> &IntMatrix {
        &self.section
    }

    /// The basis of `τ^⊥ ∩ M` dual to the quotient coordinates.
    pub fn dual_basis(&self) -> Vec<LatticeVector> {
        self.projection
            .iter()
            .map(|row| LatticeVector::new(Side::M, row.clone()))
            .collect()
    }

    pub fn project(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(v.dim(), self.ambient_dim, "projecting a vector of the wrong dimension");
        LatticeVector::new(Side::N, linalg::mat_vec(&self.projection, v.coords()))
    }

    /// A lift `ṽ ∈ N` with `project(ṽ) = y`.
    pub fn lift(&self, y: &LatticeVector) -> LatticeVector {
        assert_eq!(y.dim(), self.codim(), "lifting a vector of the wrong dimension");
        LatticeVector::new(Side::N, linalg::mat_vec(&self.section, y.coords()))
    }

    /// Whether `u ∈ M` annihilates the subspace (i.e. `u ∈ τ^⊥`).
    pub fn annihilates(&self, u: &LatticeVector) -> bool {
        self.subspace_basis
            .iter()
            .all(|g| linalg::dot(g.coords(), u.coords()).is_zero())
    }

    /// Pairing of a quotient point with `u ∈ τ^⊥`; `None` when `u ∉ τ^⊥`.
    pub fn pairing(&self, y: &LatticeVector, u: &LatticeVector) -> Option<BigInt> {
        if !self.annihilates(u) {
            return None;
        }
        Some(linalg::dot(self.lift(y).coords(), u.coords()))
    }
}
