//! Newton polyhedron, its dual fan and the polar polyhedron, all through
//! homogenized cones so the double description does the work.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Integer, Signed, Zero};

use super::MonomialIdeal;
use crate::cones::{dual_generators, Cone, FaceRef};
use crate::error::Result;
use crate::lattice::linalg;
use crate::lattice::{LatticeVector, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    /// Vertices of `conv(generators) + σ^∨`, sorted.
    pub vertices: Vec<LatticeVector>,
    /// Generators of the reduced ideal that are not vertices.
    pub redundant: Vec<LatticeVector>,
}

pub fn newton_polytope(a: &MonomialIdeal) -> Result<NewtonPolytope> {
    let n = a.chart().ambient_dim();
    let mut gens: Vec<LatticeVector> = a
        .generators()
        .iter()
        .map(|u| {
            let mut c = u.coords().to_vec();
            c.push(BigInt::from(1));
            LatticeVector::new(Side::M, c)
        })
        .collect();
    for d in a.chart().dual_rays() {
        let mut c = d.coords().to_vec();
        c.push(BigInt::zero());
        gens.push(LatticeVector::new(Side::M, c));
    }
    let hom = Cone::from_generators(Side::M, n + 1, &gens)?;
    let mut vertices: Vec<LatticeVector> = hom
        .rays()
        .iter()
        .filter(|r| r.coords()[n].is_positive())
        .map(|r| {
            debug_assert_eq!(r.coords()[n], BigInt::from(1));
            LatticeVector::new(Side::M, r.coords()[..n].to_vec())
        })
        .collect();
    vertices.sort();
    let redundant = a
        .generators()
        .iter()
        .filter(|u| vertices.binary_search(u).is_err())
        .cloned()
        .collect();
    Ok(NewtonPolytope { vertices, redundant })
}

/// The cones of linearity of `g`, one per Newton vertex in vertex order.
pub fn dual_fan(a: &MonomialIdeal) -> Result<Vec<Cone>> {
    let n = a.chart().ambient_dim();
    let vertices = newton_polytope(a)?.vertices;
    let mut out = Vec::with_capacity(vertices.len());
    for ui in &vertices {
        let mut constraints: Vec<LatticeVector> = a.chart().dual_cone();
        constraints.extend(vertices.iter().filter(|uj| uj != &ui).map(|uj| uj - ui));
        let gens = dual_generators(Side::M, n, &constraints)?;
        out.push(Cone::from_generators(Side::N, n, &gens)?);
    }
    Ok(out)
}

/// `p · G°` where `G° = {v ∈ σ : g(v) ≥ 1}`.
#[derive(Debug, Clone)]
pub struct PolarPolytope {
    pub level: BigInt,
    /// Vertices, sorted lexicographically.
    pub vertices: Vec<Vec<BigRational>>,
    /// Bounded faces of the boundary `g⁻¹(p)` as sorted vertex index sets,
    /// vertices included.
    pub compact_faces: Vec<Vec<usize>>,
    /// `{(v, s) : v ∈ σ, ⟨v, u⟩ ≥ s ≥ 0}`, whose slice `s = 1` is `G°`.
    homogenized: Cone,
    face_refs: Vec<FaceRef>,
}

impl PolarPolytope {
    /// Least common multiple of the vertex denominators of `G°`, the smallest
    /// level at which every vertex is a lattice point.
    pub fn integral_level(&self) -> BigInt {
        let level = BigRational::from_integer(self.level.clone());
        self.vertices
            .iter()
            .flatten()
            .fold(BigInt::from(1), |acc, x| acc.lcm((x / &level).denom()))
    }
}

pub fn polar_polytope(a: &MonomialIdeal, p: &BigInt) -> Result<PolarPolytope> {
    let n = a.chart().ambient_dim();
    let vertices = newton_polytope(a)?.vertices;
    let lift = |u: &[BigInt], s: i64| {
        let mut c = u.to_vec();
        c.push(BigInt::from(s));
        LatticeVector::new(Side::M, c)
    };
    let mut constraints: Vec<LatticeVector> = a.chart().dual_rays().iter().map(|d| lift(d.coords(), 0)).collect();
    constraints.extend(vertices.iter().map(|u| lift(u.coords(), -1)));
    constraints.push(lift(&vec![BigInt::zero(); n], 1));
    let gens = dual_generators(Side::M, n + 1, &constraints)?;
    let homogenized = Cone::from_generators(Side::N, n + 1, &gens)?;

    let scaled = |r: &LatticeVector| -> Vec<BigRational> {
        let s = &r.coords()[n];
        r.coords()[..n]
            .iter()
            .map(|x| BigRational::new(x * p, s.clone()))
            .collect()
    };
    let mut order: Vec<(Vec<BigRational>, usize)> = homogenized
        .rays()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.coords()[n].is_positive())
        .map(|(i, r)| (scaled(r), i))
        .collect();
    order.sort();
    let index_of = |ray: usize| order.iter().position(|(_, i)| *i == ray);

    // bounded faces are exactly the faces spanned by vertex rays
    let mut both: Vec<(Vec<usize>, FaceRef)> = homogenized
        .faces()
        .into_iter()
        .filter(|f| !f.is_zero())
        .filter_map(|f| {
            let mut idx = f.rays().iter().map(|&r| index_of(r)).collect::<Option<Vec<usize>>>()?;
            idx.sort_unstable();
            Some((idx, f))
        })
        .collect();
    both.sort();
    Ok(PolarPolytope {
        level: p.clone(),
        vertices: order.into_iter().map(|(v, _)| v).collect(),
        compact_faces: both.iter().map(|(i, _)| i.clone()).collect(),
        homogenized,
        face_refs: both.into_iter().map(|(_, f)| f).collect(),
    })
}

/// Lattice points on the compact faces of `g⁻¹(p)`, sorted.
pub fn compact_face_points(a: &MonomialIdeal, p: &BigInt) -> Result<Vec<LatticeVector>> {
    let polar = polar_polytope(a, p)?;
    let n = a.chart().ambient_dim();
    let mut out = BTreeSet::new();
    for (verts, f) in polar.compact_faces.iter().zip(&polar.face_refs) {
        let face = polar.homogenized.face_cone(f)?;
        let (lo, hi) = bounding_box(verts.iter().map(|&i| &polar.vertices[i]), n);
        for x in linalg::box_points(&lo, &hi) {
            let mut y = x.clone();
            y.push(p.clone());
            if face.contains_coords(&y) {
                out.insert(x);
            }
        }
    }
    Ok(out.into_iter().map(|x| LatticeVector::new(Side::N, x)).collect())
}

pub(crate) fn bounding_box<'a>(
    points: impl Iterator<Item = &'a Vec<BigRational>>,
    n: usize,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut lo: Option<Vec<BigInt>> = None;
    let mut hi: Option<Vec<BigInt>> = None;
    for p in points {
        let f: Vec<BigInt> = p.iter().map(|x| x.floor().to_integer()).collect();
        let c: Vec<BigInt> = p.iter().map(|x| x.ceil().to_integer()).collect();
        lo = Some(match lo {
            None => f,
            Some(l) => l.into_iter().zip(f).map(|(a, b)| a.min(b)).collect(),
        });
        hi = Some(match hi {
            None => c,
            Some(h) => h.into_iter().zip(c).map(|(a, b)| a.max(b)).collect(),
        });
    }
    (
        lo.unwrap_or_else(|| vec![BigInt::zero(); n]),
        hi.unwrap_or_else(|| vec![BigInt::zero(); n]),
    )
}
