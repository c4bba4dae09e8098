//! Orbits of the arc space under the arc torus.
//!
//! An orbit is labelled by a cone `τ` of the fan (the stratum its generic
//! point lands in) and a lattice point of `N_τ`. Quotient coordinates are the
//! pairings with the Hermite basis of `τ^⊥ ∩ M`, so labels are canonical.

mod series;
mod witness;

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Signed, Zero};

use crate::cones::{Cone, FaceQuotient, FaceRef, Fan};
use crate::error::{Error, Result};
use crate::lattice::linalg;
use crate::lattice::{Extended, LatticeVector, Side};

pub use series::TruncatedSeries;
pub use witness::{deformation_family, dominance_witness, Witness, WitnessReport};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    stratum: FaceRef,
    point: LatticeVector,
}

impl OrbitLabel {
    pub fn new(stratum: FaceRef, point: LatticeVector) -> Self {
        OrbitLabel { stratum, point }
    }

    /// A label on the open stratum, where `N_0 = N`.
    pub fn open(point: LatticeVector) -> Self {
        Self::new(FaceRef::zero(), point)
    }

    pub fn stratum(&self) -> &FaceRef {
        &self.stratum
    }

    pub fn point(&self) -> &LatticeVector {
        &self.point
    }
}

/// A semigroup homomorphism `σ^∨ ∩ M → ℤ≥0 ∪ {∞}`, by its values on the
/// sorted Hilbert basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupHom {
    generators: Vec<LatticeVector>,
    values: Vec<Extended>,
}

impl SemigroupHom {
    pub fn new(chart: &Cone, values: Vec<Extended>) -> Result<Self> {
        let generators = chart.hilbert_basis_dual()?;
        if generators.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: generators.len(),
                found: values.len(),
            });
        }
        Ok(SemigroupHom { generators, values })
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn values(&self) -> &[Extended] {
        &self.values
    }

    pub fn value(&self, u: &LatticeVector) -> Option<&Extended> {
        self.generators.iter().position(|g| g == u).map(|i| &self.values[i])
    }

    /// Largest finite value, zero if there is none.
    pub fn max_finite(&self) -> BigInt {
        self.values
            .iter()
            .filter_map(Extended::as_finite)
            .max()
            .cloned()
            .unwrap_or_default()
    }
}

/// Validates a label against a chart and returns its quotient data.
pub(crate) fn check_label(chart: &Cone, o: &OrbitLabel) -> Result<FaceQuotient> {
    let q = chart
        .quotient_by_face(o.stratum())
        .map_err(|_| Error::InvalidLabel(format!("{:?} is not a face of the chart", o.stratum().rays())))?;
    if o.point().side() != Side::N || o.point().dim() != q.lattice.codim() {
        return Err(Error::InvalidLabel(format!(
            "point {} must lie in N_τ of rank {}",
            o.point(),
            q.lattice.codim()
        )));
    }
    if !q.image.contains(o.point())? {
        return Err(Error::InvalidLabel(format!(
            "point {} is not in the image cone",
            o.point()
        )));
    }
    Ok(q)
}

/// The homomorphism of an orbit: pairings on `τ^⊥`, `∞` elsewhere.
pub fn hom_from_label(chart: &Cone, o: &OrbitLabel) -> Result<SemigroupHom> {
    let q = check_label(chart, o)?;
    let lift = q.lattice.lift(o.point());
    let generators = chart.hilbert_basis_dual()?;
    let values = generators
        .iter()
        .map(|u| {
            if q.lattice.annihilates(u) {
                Extended::Finite(linalg::dot(lift.coords(), u.coords()))
            } else {
                Extended::Infinite
            }
        })
        .collect();
    Ok(SemigroupHom { generators, values })
}

/// The orbit label realizing a semigroup homomorphism.
pub fn classify_hom(chart: &Cone, h: &SemigroupHom) -> Result<OrbitLabel> {
    let generators = chart.hilbert_basis_dual()?;
    if generators != h.generators {
        return Err(Error::InconsistentHom(
            "values are not indexed by the chart's Hilbert basis".into(),
        ));
    }
    let finite: Vec<(&LatticeVector, &BigInt)> = generators
        .iter()
        .zip(&h.values)
        .filter_map(|(u, x)| x.as_finite().map(|x| (u, x)))
        .collect();
    if let Some((u, x)) = finite.iter().find(|(_, x)| x.is_negative()) {
        return Err(Error::InconsistentHom(format!("negative value {x} on {u}")));
    }
    let stratum = FaceRef::new(
        (0..chart.rays().len())
            .filter(|&i| {
                finite
                    .iter()
                    .all(|(u, _)| linalg::dot(u.coords(), chart.rays()[i].coords()).is_zero())
            })
            .collect(),
    );
    let q = chart.quotient_by_face(&stratum)?;
    for (u, x) in generators.iter().zip(&h.values) {
        if q.lattice.annihilates(u) != x.is_finite() {
            return Err(Error::InconsistentHom(format!(
                "finite values are not the generators of τ^⊥ for τ = {:?}",
                stratum.rays()
            )));
        }
    }
    let rows: linalg::RatMatrix = finite
        .iter()
        .map(|(u, _)| u.coords().iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let rhs: Vec<BigRational> = finite
        .iter()
        .map(|(_, x)| BigRational::from_integer((*x).clone()))
        .collect();
    let v = linalg::solve_rational(&rows, &rhs, chart.ambient_dim())
        .ok_or_else(|| Error::InconsistentHom("values violate a semigroup relation".into()))?;
    let mut point = Vec::with_capacity(q.lattice.codim());
    for row in q.lattice.projection_matrix() {
        let y = row.iter().zip(&v).fold(BigRational::zero(), |acc, (p, x)| {
            acc + BigRational::from_integer(p.clone()) * x
        });
        if !y.is_integer() {
            return Err(Error::InconsistentHom("values do not come from a lattice point".into()));
        }
        point.push(y.to_integer());
    }
    let label = OrbitLabel::new(stratum, LatticeVector::new(Side::N, point));
    debug_assert_eq!(hom_from_label(chart, &label).as_ref().map(|x| &x.values), Ok(&h.values));
    Ok(label)
}

/// `x^u ↦ t^⟨v,u⟩` on the Hilbert basis, zero where the value is `∞`.
pub fn monomial_arc(chart: &Cone, o: &OrbitLabel, precision: u64) -> Result<Vec<(LatticeVector, TruncatedSeries)>> {
    let h = hom_from_label(chart, o)?;
    let need = h.max_finite();
    if BigInt::from(precision) < need {
        return Err(Error::PrecisionTooLow {
            needed: need.to_string(),
            given: precision.to_string(),
        });
    }
    h.generators
        .iter()
        .zip(&h.values)
        .map(|(u, x)| {
            let s = match x {
                Extended::Finite(k) => TruncatedSeries::t_power(k, precision)?,
                Extended::Infinite => TruncatedSeries::zero(precision),
            };
            Ok((u.clone(), s))
        })
        .collect()
}

/// The jet level `m` at which the orbit of an open-stratum label is a cylinder.
pub fn cylinder_level(chart: &Cone, o: &OrbitLabel) -> Result<BigInt> {
    if !o.stratum().is_zero() {
        return Err(Error::Unsupported(
            "cylinder levels are computed on the open stratum only".into(),
        ));
    }
    Ok(hom_from_label(chart, o)?.max_finite())
}

/// Quotient data for every (chart, face) pair of a fan, for dominance tests.
#[derive(Debug, Clone)]
pub struct OrbitSpace<'a> {
    fan: &'a Fan,
    quotients: BTreeMap<(usize, FaceRef), FaceQuotient>,
}

/// The covering relations of dominance among the labels up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoset {
    pub nodes: Vec<OrbitLabel>,
    /// `(i, j)`: the closure of orbit `i` contains orbit `j`, with nothing between.
    pub edges: Vec<(usize, usize)>,
}

impl<'a> OrbitSpace<'a> {
    pub fn new(fan: &'a Fan) -> Result<Self> {
        let mut quotients = BTreeMap::new();
        for (i, chart) in fan.charts().iter().enumerate() {
            for f in chart.faces() {
                quotients.insert((i, fan.global_face(i, &f)), chart.quotient_by_face(&f)?);
            }
        }
        Ok(OrbitSpace { fan, quotients })
    }

    pub fn fan(&self) -> &Fan {
        self.fan
    }

    pub(crate) fn quotient(&self, chart: usize, f: &FaceRef) -> Option<&FaceQuotient> {
        self.quotients.get(&(chart, f.clone()))
    }

    fn in_chart(&self, chart: usize, o: &OrbitLabel) -> bool {
        self.quotient(chart, o.stratum())
            .is_some_and(|q| o.point().dim() == q.lattice.codim() && q.image.contains_coords(o.point().coords()))
    }

    /// Charts whose arc space contains the orbit.
    pub fn charts_of(&self, o: &OrbitLabel) -> Vec<usize> {
        (0..self.fan.charts().len()).filter(|&i| self.in_chart(i, o)).collect()
    }

    pub fn validate(&self, o: &OrbitLabel) -> Result<()> {
        if !self.fan.contains_cone(o.stratum()) {
            return Err(Error::InvalidLabel(format!(
                "{:?} is not a cone of the fan",
                o.stratum().rays()
            )));
        }
        if o.point().side() != Side::N {
            return Err(Error::InvalidLabel("orbit points lie in N_τ".into()));
        }
        if self.charts_of(o).is_empty() {
            return Err(Error::InvalidLabel(format!(
                "point {} is not in the image of any chart containing {:?}",
                o.point(),
                o.stratum().rays()
            )));
        }
        Ok(())
    }

    /// `ρ(v) ≤ v'` in the image of `σ` in `N_γ`.
    pub(crate) fn dominates_in_chart(&self, chart: usize, o1: &OrbitLabel, o2: &OrbitLabel) -> bool {
        if !o1.stratum().is_subface_of(o2.stratum()) || !self.in_chart(chart, o1) || !self.in_chart(chart, o2) {
            return false;
        }
        let qt = &self.quotients[&(chart, o1.stratum().clone())];
        let qg = &self.quotients[&(chart, o2.stratum().clone())];
        let rho = qg.project(&qt.lattice.lift(o1.point()));
        qg.image.contains_coords((o2.point() - &rho).coords())
    }

    /// Whether the closure of the first orbit contains the second.
    pub fn dominates(&self, o1: &OrbitLabel, o2: &OrbitLabel) -> Result<bool> {
        self.validate(o1)?;
        self.validate(o2)?;
        Ok(self.dominating_chart(o1, o2).is_some())
    }

    /// First chart, in order, witnessing the lattice criterion.
    pub fn dominating_chart(&self, o1: &OrbitLabel, o2: &OrbitLabel) -> Option<usize> {
        (0..self.fan.charts().len()).find(|&i| self.dominates_in_chart(i, o1, o2))
    }

    /// All labels with `|v|∞ ≤ bound`, sorted, with the Hasse diagram.
    pub fn poset(&self, bound: u64) -> OrbitPoset {
        let mut nodes = Vec::new();
        for tau in self.fan.cones() {
            let Some(codim) = self
                .quotients
                .iter()
                .find(|((_, f), _)| f == tau)
                .map(|(_, q)| q.lattice.codim())
            else {
                continue;
            };
            for point in box_points(codim, bound) {
                let o = OrbitLabel::new(tau.clone(), LatticeVector::new(Side::N, point));
                if !self.charts_of(&o).is_empty() {
                    nodes.push(o);
                }
            }
        }
        nodes.sort();
        let n = nodes.len();
        let dom: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i != j && self.dominating_chart(&nodes[i], &nodes[j]).is_some())
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if dom[i][j] && !(0..n).any(|k| dom[i][k] && dom[k][j]) {
                    edges.push((i, j));
                }
            }
        }
        OrbitPoset { nodes, edges }
    }
}

/// Integer points of `[-bound, bound]^dim`, lexicographic.
pub(crate) fn box_points(dim: usize, bound: u64) -> Vec<Vec<BigInt>> {
    let b = BigInt::from(bound);
    linalg::box_points(&vec![-&b; dim], &vec![b; dim])
}

pub fn dominates(fan: &Fan, o1: &OrbitLabel, o2: &OrbitLabel) -> Result<bool> {
    OrbitSpace::new(fan)?.dominates(o1, o2)
}

pub fn orbit_poset(fan: &Fan, bound: u64) -> Result<OrbitPoset> {
    Ok(OrbitSpace::new(fan)?.poset(bound))
}
