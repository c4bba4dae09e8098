//! Minimal elements of level sets: components of contact loci and of the
//! preimage of the singular locus.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::newton::{bounding_box, polar_polytope};
use super::MonomialIdeal;
use crate::arcs::{check_label, OrbitLabel};
use crate::cones::{Cone, FaceRef};
use crate::error::{show, Error, Result};
use crate::lattice::linalg;
use crate::lattice::{Extended, LatticeVector, Side};

/// Margin doublings tried before giving up on stabilization.
pub const DEFAULT_DOUBLINGS: usize = 6;

/// A minimal `v ∈ V(𝔞, p)` with `v = e·v₀`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ContactComponent {
    pub point: LatticeVector,
    pub e: BigInt,
    pub v0: LatticeVector,
    pub level: BigInt,
}

/// A minimal lattice point over the singular faces, with the face whose
/// relative interior holds it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SingComponent {
    pub point: LatticeVector,
    pub e: BigInt,
    pub v0: LatticeVector,
    pub face: FaceRef,
}

/// Local test: no Hilbert basis step `v - w` stays in `σ` at level `p`.
pub fn is_minimal_in_contact(a: &MonomialIdeal, p: &BigInt, v: &LatticeVector) -> Result<bool> {
    let g = a.order_function(v)?;
    if &g != p {
        return Err(Error::WrongLevel {
            level: p.to_string(),
            found: g.to_string(),
        });
    }
    Ok(minimal_unchecked(a, p, v.coords()))
}

fn minimal_unchecked(a: &MonomialIdeal, p: &BigInt, v: &[BigInt]) -> bool {
    a.cone_basis().iter().all(|w| {
        let d: Vec<BigInt> = v.iter().zip(w.coords()).map(|(x, y)| x - y).collect();
        !a.chart().contains_coords(&d) || &a.order_unchecked(&d) < p
    })
}

fn search(a: &MonomialIdeal, p: &BigInt, lo: &[BigInt], hi: &[BigInt], margin: &BigInt) -> BTreeSet<Vec<BigInt>> {
    let lo: Vec<BigInt> = lo.iter().map(|x| x - margin).collect();
    let hi: Vec<BigInt> = hi.iter().map(|x| x + margin).collect();
    linalg::box_points(&lo, &hi)
        .into_iter()
        .filter(|v| a.chart().contains_coords(v) && &a.order_unchecked(v) == p && minimal_unchecked(a, p, v))
        .collect()
}

/// Components of `Cont^p(𝔞)`, sorted by point.
///
/// Candidates come from the bounding box of the compact faces of `g⁻¹(p)`,
/// widened by the longest Hilbert basis vector of `σ ∩ N`. The margin is
/// doubled until two consecutive searches agree.
pub fn contact_components(a: &MonomialIdeal, p: &BigInt, max_doublings: usize) -> Result<Vec<ContactComponent>> {
    if !p.is_positive() {
        return Err(Error::NonPositiveLevel);
    }
    let polar = polar_polytope(a, p)?;
    let n = a.chart().ambient_dim();
    let (lo, hi) = bounding_box(polar.vertices.iter(), n);
    let mut margin = a
        .cone_basis()
        .iter()
        .map(LatticeVector::max_norm)
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    let mut found = search(a, p, &lo, &hi, &margin);
    let mut stable = false;
    for _ in 0..max_doublings {
        margin *= 2;
        let wider = search(a, p, &lo, &hi, &margin);
        if wider == found {
            stable = true;
            break;
        }
        found = wider;
    }
    if !stable {
        return Err(Error::NotStabilized(max_doublings));
    }
    found
        .into_iter()
        .map(|v| {
            let point = LatticeVector::new(Side::N, v);
            let (e, v0) = point.primitive_part()?;
            Ok(ContactComponent {
                point,
                e,
                v0,
                level: p.clone(),
            })
        })
        .collect()
}

/// Faces of the cone that are not smooth, in face order.
pub fn singular_faces(c: &Cone) -> Result<Vec<FaceRef>> {
    let mut out = Vec::new();
    for f in c.faces() {
        if !c.face_cone(&f)?.is_smooth() {
            out.push(f);
        }
    }
    Ok(out)
}

/// `≤_σ`-minimal lattice points of the union of relative interiors of the
/// singular faces.
///
/// That union is closed under adding `σ`, so the local test against Hilbert
/// basis steps decides minimality. A minimal point of `τ°` is a positive
/// combination of the rays of `τ` with coefficients at most 1, which bounds
/// the search by the zonotope of those rays.
pub fn sing_components(c: &Cone) -> Result<Vec<SingComponent>> {
    let singular: BTreeSet<FaceRef> = singular_faces(c)?.into_iter().collect();
    let basis = c.hilbert_basis()?;
    let n = c.ambient_dim();
    let in_union = |v: &LatticeVector| -> Result<Option<FaceRef>> {
        if !c.contains(v)? {
            return Ok(None);
        }
        let f = c.minimal_face(v)?;
        Ok(singular.contains(&f).then_some(f))
    };
    let mut out = BTreeSet::new();
    for tau in &singular {
        let mut lo = vec![BigInt::zero(); n];
        let mut hi = vec![BigInt::zero(); n];
        for &i in tau.rays() {
            for (k, x) in c.rays()[i].coords().iter().enumerate() {
                if x.is_negative() {
                    lo[k] += x;
                } else {
                    hi[k] += x;
                }
            }
        }
        for x in linalg::box_points(&lo, &hi) {
            let v = LatticeVector::new(Side::N, x);
            let Some(face) = in_union(&v)? else { continue };
            let mut minimal = true;
            for w in &basis {
                let d = &v - w;
                if in_union(&d)?.is_some() {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                let (e, v0) = v.primitive_part()?;
                out.insert(SingComponent { point: v, e, v0, face });
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// A point `ṽ` of the open stratum over the label, at the same level.
///
/// With `v₁` the sum of the rays of `τ` and `v₀ ∈ σ` a lift of the label's
/// point, `ṽ = v₀ + (p + 1)·v₁` pairs to more than `p` with every generator
/// off `τ^⊥` and agrees with the label on `τ^⊥`.
pub fn lift_component(a: &MonomialIdeal, o: &OrbitLabel) -> Result<LatticeVector> {
    let q = check_label(a.chart(), o)?;
    let p = match a.order_on_label(o)? {
        Extended::Finite(p) => p,
        Extended::Infinite => {
            return Err(Error::WrongLevel {
                level: "a finite level".into(),
                found: "inf".into(),
            })
        }
    };
    let v1 = o
        .stratum()
        .rays()
        .iter()
        .fold(LatticeVector::zero(Side::N, a.chart().ambient_dim()), |acc, &i| {
            &acc + &a.chart().rays()[i]
        });
    let mut v0 = q.lattice.lift(o.point());
    if !o.stratum().is_zero() {
        // v₁ is interior to τ, so adding enough of it lands in σ
        let shift = required_shift(a.chart(), &v0, &v1);
        v0 = &v0 + &v1.scale(&shift);
    }
    if !a.chart().contains(&v0)? {
        return Err(Error::OutsideCone(show(v0.coords())));
    }
    let m = &p + 1;
    let lifted = &v0 + &v1.scale(&m);
    debug_assert_eq!(q.project(&lifted), *o.point());
    debug_assert_eq!(a.order_unchecked(lifted.coords()), p);
    Ok(lifted)
}

/// Least `k ≥ 0` with `x + k·v₁ ∈ σ`, from the facet inequalities.
fn required_shift(c: &Cone, x: &LatticeVector, v1: &LatticeVector) -> BigInt {
    let mut k = BigInt::zero();
    for u in c.dual_rays() {
        let a = linalg::dot(x.coords(), u.coords());
        let b = linalg::dot(v1.coords(), u.coords());
        if a.is_negative() && b.is_positive() {
            let need = BigRational::new(-a, b).ceil().to_integer();
            k = k.max(need);
        }
    }
    k
}
