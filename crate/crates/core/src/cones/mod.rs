//! Strongly convex rational polyhedral cones and fans.
//!
//! A [`Cone`] is given by primitive ray generators and caches its dual
//! description at construction. Faces are addressed by [`FaceRef`], the sorted
//! indices of the rays spanning them.

mod dd;
mod fan;
mod hilbert;

use std::collections::{BTreeSet, VecDeque};

use num::{BigInt, One, Signed, Zero};

use crate::error::{show, Error, Result};
use crate::lattice::linalg::{self, IntMatrix};
use crate::lattice::{quotient_lattice, LatticeVector, QuotientLattice, Side};

pub(crate) use dd::double_description;
pub use fan::Fan;

/// A face of a cone, as the sorted indices of the parent's rays it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    rays: Vec<usize>,
}

impl FaceRef {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        FaceRef { rays }
    }

    pub fn zero() -> Self {
        FaceRef { rays: Vec::new() }
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    /// `self ⊆ other` as ray sets; for faces of one cone this is the face order.
    pub fn is_subface_of(&self, other: &FaceRef) -> bool {
        self.rays.iter().all(|r| other.rays.binary_search(r).is_ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    side: Side,
    dim: usize,
    rays: Vec<LatticeVector>,
    dual_rays: Vec<LatticeVector>,
    dual_lineality: Vec<LatticeVector>,
}

/// The image `σ̄` of a cone in `N_τ` together with the quotient map.
#[derive(Debug, Clone)]
pub struct FaceQuotient {
    pub lattice: QuotientLattice,
    pub image: Cone,
}

impl FaceQuotient {
    pub fn project(&self, v: &LatticeVector) -> LatticeVector {
        self.lattice.project(v)
    }
}

/// Generators of `{x : ⟨a, x⟩ ≥ 0 for all a}` in the lattice opposite to the
/// constraints: extreme rays modulo lineality, then `±` a lineality basis.
pub fn dual_generators(side: Side, dim: usize, constraints: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let rows = check_vectors(side, dim, constraints)?;
    let desc = double_description(dim, &rows);
    let out_side = side.dual();
    let mut out: Vec<LatticeVector> = desc.rays.into_iter().map(|r| LatticeVector::new(out_side, r)).collect();
    for l in desc.lineality {
        let neg: Vec<BigInt> = l.iter().map(|x| -x).collect();
        out.push(LatticeVector::new(out_side, l));
        out.push(LatticeVector::new(out_side, neg));
    }
    out.sort();
    Ok(out)
}

fn check_vectors(side: Side, dim: usize, vs: &[LatticeVector]) -> Result<IntMatrix> {
    vs.iter()
        .map(|v| {
            if v.side() != side {
                return Err(Error::SideMismatch(format!(
                    "expected {side:?}-side vector, found {v:?}"
                )));
            }
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            Ok(v.coords().to_vec())
        })
        .collect()
}

impl Cone {
    /// Validates and builds a cone from ray generators, which are scaled to be
    /// primitive. Every generator must span an extreme ray.
    pub fn new(side: Side, dim: usize, rays: Vec<LatticeVector>) -> Result<Cone> {
        let rows = check_vectors(side, dim, &rays)?;
        let mut prim: IntMatrix = Vec::with_capacity(rows.len());
        for r in &rows {
            if r.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVector);
            }
            let p = linalg::make_primitive(r);
            if prim.contains(&p) {
                return Err(Error::DuplicateRay(show(&p)));
            }
            prim.push(p);
        }
        let cone = Self::from_primitive(side, dim, prim)?;
        for r in &cone.rays {
            if !cone.is_extreme(r) {
                return Err(Error::RedundantGenerator(show(r.coords())));
            }
        }
        Ok(cone)
    }

    /// The cone spanned by arbitrary generators: zero and non-extreme
    /// generators are dropped, the rest made primitive and sorted.
    pub fn from_generators(side: Side, dim: usize, gens: &[LatticeVector]) -> Result<Cone> {
        let rows = check_vectors(side, dim, gens)?;
        let mut prim: IntMatrix = rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| linalg::make_primitive(r))
            .collect();
        prim.sort();
        prim.dedup();
        let mut cone = Self::from_primitive(side, dim, prim)?;
        let extreme: Vec<LatticeVector> = cone.rays.iter().filter(|r| cone.is_extreme(r)).cloned().collect();
        cone.rays = extreme;
        Ok(cone)
    }

    pub fn zero(side: Side, dim: usize) -> Cone {
        Self::from_primitive(side, dim, Vec::new()).expect("the zero cone is strongly convex")
    }

    fn from_primitive(side: Side, dim: usize, rays: IntMatrix) -> Result<Cone> {
        let desc = double_description(dim, &rays);
        let mut normals: IntMatrix = desc.rays.clone();
        normals.extend(desc.lineality.iter().cloned());
        if linalg::rank(&normals) != dim {
            return Err(Error::NotStronglyConvex);
        }
        let dual = side.dual();
        Ok(Cone {
            side,
            dim,
            rays: rays.into_iter().map(|r| LatticeVector::new(side, r)).collect(),
            dual_rays: desc.rays.into_iter().map(|r| LatticeVector::new(dual, r)).collect(),
            dual_lineality: desc
                .lineality
                .into_iter()
                .map(|r| LatticeVector::new(dual, r))
                .collect(),
        })
    }

    fn is_extreme(&self, r: &LatticeVector) -> bool {
        let mut active: IntMatrix = self
            .dual_rays
            .iter()
            .filter(|u| linalg::dot(u.coords(), r.coords()).is_zero())
            .map(|u| u.coords().to_vec())
            .collect();
        active.extend(self.dual_lineality.iter().map(|u| u.coords().to_vec()));
        linalg::rank(&active) + 1 == self.dim
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.dual_lineality.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dual_lineality.is_empty()
    }

    /// Extreme rays of the dual modulo its lineality (the facet normals).
    pub fn dual_rays(&self) -> &[LatticeVector] {
        &self.dual_rays
    }

    /// Basis of `span(σ)^⊥ ∩ M`, the lineality space of the dual.
    pub fn dual_lineality(&self) -> &[LatticeVector] {
        &self.dual_lineality
    }

    /// Generators of `σ^∨`: facet normals, then a lineality basis with both
    /// signs. Sorted lexicographically.
    pub fn dual_cone(&self) -> Vec<LatticeVector> {
        let mut out = self.dual_rays.clone();
        for l in &self.dual_lineality {
            out.push(l.clone());
            out.push(-l);
        }
        out.sort();
        out
    }

    /// `σ^∨` as a cone; requires `σ` full-dimensional so the dual is pointed.
    pub fn dual(&self) -> Result<Cone> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional(format!(
                "dual of a {}-dimensional cone in dimension {} is not pointed",
                self.dim(),
                self.dim
            )));
        }
        Cone::new(self.side.dual(), self.dim, self.dual_rays.clone())
    }

    fn check_point(&self, v: &LatticeVector) -> Result<()> {
        if v.side() != self.side {
            return Err(Error::SideMismatch(format!("point {v:?} is not on the cone's side")));
        }
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        self.check_point(v)?;
        Ok(self.contains_coords(v.coords()))
    }

    pub(crate) fn contains_coords(&self, v: &[BigInt]) -> bool {
        self.dual_rays.iter().all(|u| !linalg::dot(u.coords(), v).is_negative())
            && self.dual_lineality.iter().all(|u| linalg::dot(u.coords(), v).is_zero())
    }

    /// The order `v ≤_σ v2`, i.e. `v2 - v ∈ σ`.
    pub fn leq(&self, v: &LatticeVector, v2: &LatticeVector) -> Result<bool> {
        for p in [v, v2] {
            if !self.contains(p)? {
                return Err(Error::OutsideCone(show(p.coords())));
            }
        }
        Ok(self.contains_coords((v2 - v).coords()))
    }

    /// The face whose relative interior contains `v`.
    pub fn minimal_face(&self, v: &LatticeVector) -> Result<FaceRef> {
        if !self.contains(v)? {
            return Err(Error::OutsideCone(show(v.coords())));
        }
        let vanishing: Vec<&LatticeVector> = self
            .dual_rays
            .iter()
            .filter(|u| linalg::dot(u.coords(), v.coords()).is_zero())
            .collect();
        Ok(self.face_cut_out_by(&vanishing))
    }

    fn face_cut_out_by(&self, normals: &[&LatticeVector]) -> FaceRef {
        FaceRef::new(
            (0..self.rays.len())
                .filter(|&i| {
                    normals
                        .iter()
                        .all(|u| linalg::dot(u.coords(), self.rays[i].coords()).is_zero())
                })
                .collect(),
        )
    }

    /// Whether `v` lies in the relative interior of the face `f`.
    pub fn in_relative_interior(&self, f: &FaceRef, v: &LatticeVector) -> Result<bool> {
        Ok(self.contains(v)? && &self.minimal_face(v)? == f)
    }

    /// All faces, from `{0}` to the cone itself, sorted by ray indices.
    pub fn faces(&self) -> Vec<FaceRef> {
        let top = FaceRef::new((0..self.rays.len()).collect());
        let mut seen: BTreeSet<FaceRef> = BTreeSet::new();
        let mut queue = VecDeque::from([top.clone()]);
        seen.insert(top);
        while let Some(face) = queue.pop_front() {
            for u in &self.dual_rays {
                let sub = FaceRef::new(
                    face.rays
                        .iter()
                        .copied()
                        .filter(|&i| linalg::dot(u.coords(), self.rays[i].coords()).is_zero())
                        .collect(),
                );
                if seen.insert(sub.clone()) {
                    queue.push_back(sub);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn face_dim(&self, f: &FaceRef) -> usize {
        let rows: IntMatrix = f.rays.iter().map(|&i| self.rays[i].coords().to_vec()).collect();
        linalg::rank(&rows)
    }

    pub fn facets(&self) -> Vec<FaceRef> {
        let d = self.dim();
        self.faces()
            .into_iter()
            .filter(|f| d > 0 && self.face_dim(f) == d - 1)
            .collect()
    }

    /// A functional in `σ^∨` whose zero set on `σ` is exactly the face.
    pub fn supporting_functional(&self, f: &FaceRef) -> Result<LatticeVector> {
        if !self.is_face(f) {
            return Err(Error::NotAFace(f.rays.clone()));
        }
        let mut acc = LatticeVector::zero(self.side.dual(), self.dim);
        for u in &self.dual_rays {
            if f.rays
                .iter()
                .all(|&i| linalg::dot(u.coords(), self.rays[i].coords()).is_zero())
            {
                acc = &acc + u;
            }
        }
        Ok(acc)
    }

    pub fn is_face(&self, f: &FaceRef) -> bool {
        if f.rays.iter().any(|&i| i >= self.rays.len()) {
            return false;
        }
        let vanishing: Vec<&LatticeVector> = self
            .dual_rays
            .iter()
            .filter(|u| {
                f.rays
                    .iter()
                    .all(|&i| linalg::dot(u.coords(), self.rays[i].coords()).is_zero())
            })
            .collect();
        &self.face_cut_out_by(&vanishing) == f
    }

    /// The face as a cone in its own right, rays in the order of `f`.
    pub fn face_cone(&self, f: &FaceRef) -> Result<Cone> {
        if !self.is_face(f) {
            return Err(Error::NotAFace(f.rays.clone()));
        }
        Cone::new(
            self.side,
            self.dim,
            f.rays.iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }

    /// Whether the rays extend to a basis of the lattice.
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        let rows: IntMatrix = self.rays.iter().map(|r| r.coords().to_vec()).collect();
        if linalg::rank(&rows) != rows.len() {
            return false;
        }
        linalg::elementary_divisors(&rows, self.dim).iter().all(One::is_one)
    }

    /// A linearly independent subset of rays spanning the same space.
    pub(crate) fn span_basis(rays: &[LatticeVector]) -> Vec<LatticeVector> {
        let mut basis: Vec<LatticeVector> = Vec::new();
        let mut rows: IntMatrix = Vec::new();
        for r in rays {
            rows.push(r.coords().to_vec());
            if linalg::rank(&rows) == rows.len() {
                basis.push(r.clone());
            } else {
                rows.pop();
            }
        }
        basis
    }

    /// The image of the cone in `N_τ` for a face `τ`.
    pub fn quotient_by_face(&self, f: &FaceRef) -> Result<FaceQuotient> {
        if self.side != Side::N {
            return Err(Error::SideMismatch("face quotients are taken in N".into()));
        }
        let face = self.face_cone(f)?;
        let lattice = quotient_lattice(self.dim, &Self::span_basis(face.rays()))?;
        let projected: Vec<LatticeVector> = self.rays.iter().map(|r| lattice.project(r)).collect();
        let image = Cone::from_generators(Side::N, lattice.codim(), &projected)?;
        Ok(FaceQuotient { lattice, image })
    }

    /// Sum of the rays, a point in the relative interior.
    pub fn interior_point(&self) -> LatticeVector {
        self.rays
            .iter()
            .fold(LatticeVector::zero(self.side, self.dim), |acc, r| &acc + r)
    }

    /// Hilbert basis of the semigroup `σ ∩ L`, `L` the lattice of the cone's side.
    pub fn hilbert_basis(&self) -> Result<Vec<LatticeVector>> {
        hilbert::hilbert_basis(self)
    }

    /// Hilbert basis of `σ^∨ ∩ M`, sorted lexicographically.
    pub fn hilbert_basis_dual(&self) -> Result<Vec<LatticeVector>> {
        self.dual()?.hilbert_basis()
    }

    /// A triangulation using only the cone's rays, as ray index sets.
    pub fn triangulation(&self) -> Vec<FaceRef> {
        hilbert::triangulate(self)
    }

    /// Intersection with another cone of the same lattice.
    pub fn intersection(&self, other: &Cone) -> Result<Cone> {
        if other.side != self.side || other.dim != self.dim {
            return Err(Error::SideMismatch("intersecting cones of different lattices".into()));
        }
        let normals: Vec<LatticeVector> = self.dual_cone().into_iter().chain(other.dual_cone()).collect();
        let gens = dual_generators(self.side.dual(), self.dim, &normals)?;
        Cone::from_generators(self.side, self.dim, &gens)
    }

    /// Pairing-positive degree functional used to grade the semigroup.
    pub(crate) fn grading(&self) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.dim];
        for u in &self.dual_rays {
            for (a, x) in acc.iter_mut().zip(u.coords()) {
                *a += x;
            }
        }
        acc
    }
}
