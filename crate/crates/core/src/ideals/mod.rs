//! Invariant monomial ideals on an affine chart.
//!
//! The order function `g(v) = min ⟨v, u⟩` over the generators drives
//! everything here: contact loci are level sets of `g`, and their components
//! are the `≤_σ`-minimal lattice points of each level set.

mod contact;
mod newton;

use num::{BigInt, BigRational, Zero};

use crate::arcs::OrbitLabel;
use crate::cones::Cone;
use crate::error::{show, Error, Result};
use crate::lattice::linalg;
use crate::lattice::{Extended, LatticeVector, Side};

pub use contact::{
    contact_components, is_minimal_in_contact, lift_component, sing_components, singular_faces, ContactComponent,
    SingComponent, DEFAULT_DOUBLINGS,
};
pub use newton::{compact_face_points, dual_fan, newton_polytope, polar_polytope, NewtonPolytope, PolarPolytope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    chart: Cone,
    generators: Vec<LatticeVector>,
    cone_basis: Vec<LatticeVector>,
}

impl MonomialIdeal {
    /// The ideal generated by `x^u` for the given exponents, stored reduced.
    /// The second component lists the dropped `u ∈ u' + σ^∨`.
    pub fn new(chart: &Cone, generators: &[LatticeVector]) -> Result<(Self, Vec<LatticeVector>)> {
        if !chart.is_full_dimensional() || chart.side() != Side::N {
            return Err(Error::NotFullDimensional(
                "ideals are taken on full-dimensional cones in N".into(),
            ));
        }
        if generators.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for u in generators {
            if u.side() != Side::M || u.dim() != chart.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: chart.ambient_dim(),
                    found: u.dim(),
                });
            }
            if !in_dual(chart, u) {
                return Err(Error::OutsideDual(show(u.coords())));
            }
        }
        let mut gens = generators.to_vec();
        gens.sort();
        gens.dedup();
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for u in &gens {
            if gens.iter().any(|w| w != u && in_dual(chart, &(u - w))) {
                dropped.push(u.clone());
            } else {
                kept.push(u.clone());
            }
        }
        let ideal = MonomialIdeal {
            chart: chart.clone(),
            generators: kept,
            cone_basis: chart.hilbert_basis()?,
        };
        Ok((ideal, dropped))
    }

    pub fn chart(&self) -> &Cone {
        &self.chart
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Hilbert basis of `σ ∩ N`.
    pub fn cone_basis(&self) -> &[LatticeVector] {
        &self.cone_basis
    }

    /// `g(v)` for a point of `σ`.
    pub fn order_function(&self, v: &LatticeVector) -> Result<BigInt> {
        if !self.chart.contains(v)? {
            return Err(Error::OutsideCone(show(v.coords())));
        }
        Ok(self.order_unchecked(v.coords()))
    }

    pub(crate) fn order_unchecked(&self, v: &[BigInt]) -> BigInt {
        self.generators
            .iter()
            .map(|u| linalg::dot(v, u.coords()))
            .min()
            .expect("ideal has generators")
    }

    /// `g` on the extended homomorphism of an orbit: pairings off `τ^⊥` are `∞`.
    pub fn order_on_label(&self, o: &OrbitLabel) -> Result<Extended> {
        let q = crate::arcs::check_label(&self.chart, o)?;
        let lift = q.lattice.lift(o.point());
        Ok(self
            .generators
            .iter()
            .map(|u| {
                if q.lattice.annihilates(u) {
                    Extended::Finite(linalg::dot(lift.coords(), u.coords()))
                } else {
                    Extended::Infinite
                }
            })
            .min()
            .expect("ideal has generators"))
    }
}

fn in_dual(chart: &Cone, u: &LatticeVector) -> bool {
    chart
        .rays()
        .iter()
        .all(|r| linalg::dot(r.coords(), u.coords()) >= BigInt::zero())
}

/// `val_v = e · val_{D_{v₀}}` for `v = e·v₀ ∈ σ ∩ N`, `v ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricValuation {
    chart: Cone,
    point: LatticeVector,
    e: BigInt,
    v0: LatticeVector,
}

impl ToricValuation {
    pub fn new(chart: &Cone, v: &LatticeVector) -> Result<Self> {
        if !chart.contains(v)? {
            return Err(Error::OutsideCone(show(v.coords())));
        }
        let (e, v0) = v.primitive_part()?;
        Ok(ToricValuation {
            chart: chart.clone(),
            point: v.clone(),
            e,
            v0,
        })
    }

    pub fn point(&self) -> &LatticeVector {
        &self.point
    }

    pub fn multiplicity(&self) -> &BigInt {
        &self.e
    }

    pub fn primitive(&self) -> &LatticeVector {
        &self.v0
    }

    /// Minimum of `⟨v, u⟩` over the support of `Σ c_u x^u`.
    pub fn eval(&self, poly: &[(BigRational, LatticeVector)]) -> Result<BigInt> {
        if poly.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut best: Option<BigInt> = None;
        for (c, u) in poly {
            if c.is_zero() {
                return Err(Error::ZeroCoefficient);
            }
            if u.side() != Side::M || u.dim() != self.chart.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.chart.ambient_dim(),
                    found: u.dim(),
                });
            }
            if !in_dual(&self.chart, u) {
                return Err(Error::OutsideDual(show(u.coords())));
            }
            let x = linalg::dot(self.point.coords(), u.coords());
            best = Some(best.map_or(x.clone(), |b| b.min(x)));
        }
        Ok(best.expect("nonempty support"))
    }
}
