//! Hilbert bases of pointed cones.
//!
//! The cone is triangulated with its own rays; every Hilbert basis element is
//! a ray or a lattice point of the half-open parallelepiped of some simplex.
//! Candidates are then processed by increasing degree, keeping those not
//! reachable from an earlier kept element inside the cone.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Zero};

use super::{Cone, FaceRef};
use crate::error::Result;
use crate::lattice::linalg::{self, IntMatrix};
use crate::lattice::LatticeVector;

/// Pulling triangulation: cone from the first ray of each facet not
/// containing it, recursively.
pub(super) fn triangulate(cone: &Cone) -> Vec<FaceRef> {
    let faces = cone.faces();
    let dims: Vec<usize> = faces.iter().map(|f| cone.face_dim(f)).collect();
    let top = FaceRef::new((0..cone.rays().len()).collect());
    let mut out = pull(&top, cone.face_dim(&top), &faces, &dims);
    out.sort();
    out
}

fn pull(face: &FaceRef, dim: usize, faces: &[FaceRef], dims: &[usize]) -> Vec<FaceRef> {
    if face.rays().len() == dim {
        return vec![face.clone()];
    }
    let apex = face.rays()[0];
    let mut out = Vec::new();
    for (g, &gd) in faces.iter().zip(dims) {
        if gd + 1 != dim || !g.is_subface_of(face) || g.rays().contains(&apex) {
            continue;
        }
        for s in pull(g, gd, faces, dims) {
            let mut rays = s.rays().to_vec();
            rays.push(apex);
            out.push(FaceRef::new(rays));
        }
    }
    out
}

/// Lattice points `Σ λᵢ rᵢ` with `0 ≤ λᵢ < 1`, excluding the origin.
fn parallelepiped_points(rays: &IntMatrix, dim: usize) -> Vec<Vec<BigInt>> {
    let herm = linalg::hermite_rows(rays, dim);
    let diag: Vec<BigInt> = (0..dim).map(|i| herm.h[i][i].clone()).collect();
    let columns = linalg::to_rational(&linalg::transpose(rays, dim));
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); dim];
    loop {
        let rhs: Vec<BigRational> = x.iter().cloned().map(BigRational::from_integer).collect();
        let lambda = linalg::solve_rational(&columns, &rhs, rays.len()).expect("simplex rays span the space");
        let mut p = x.clone();
        for (l, r) in lambda.iter().zip(rays) {
            let f = l.floor().to_integer();
            for (pk, rk) in p.iter_mut().zip(r) {
                *pk -= &f * rk;
            }
        }
        if p.iter().any(|c| !c.is_zero()) {
            out.push(p);
        }
        // odometer over the coset representatives 0 ≤ xᵢ < hᵢᵢ
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            x[k] += 1;
            if x[k] < diag[k] {
                break;
            }
            x[k] = BigInt::zero();
            k += 1;
        }
    }
}

fn full_dimensional_basis(cone: &Cone) -> Vec<Vec<BigInt>> {
    let dim = cone.ambient_dim();
    let mut candidates: BTreeSet<Vec<BigInt>> = cone.rays().iter().map(|r| r.coords().to_vec()).collect();
    for simplex in triangulate(cone) {
        let rays: IntMatrix = simplex
            .rays()
            .iter()
            .map(|&i| cone.rays()[i].coords().to_vec())
            .collect();
        candidates.extend(parallelepiped_points(&rays, dim));
    }
    let grading = cone.grading();
    let mut sorted: Vec<(BigInt, Vec<BigInt>)> =
        candidates.into_iter().map(|c| (linalg::dot(&grading, &c), c)).collect();
    sorted.sort();
    let mut kept: Vec<Vec<BigInt>> = Vec::new();
    for (_, c) in sorted {
        let reducible = kept.iter().any(|h| {
            let diff: Vec<BigInt> = c.iter().zip(h).map(|(a, b)| a - b).collect();
            cone.contains_coords(&diff)
        });
        if !reducible {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

pub(super) fn hilbert_basis(cone: &Cone) -> Result<Vec<LatticeVector>> {
    let side = cone.side();
    let dim = cone.ambient_dim();
    if cone.rays().is_empty() {
        return Ok(Vec::new());
    }
    if cone.is_full_dimensional() {
        return Ok(full_dimensional_basis(cone)
            .into_iter()
            .map(|c| LatticeVector::new(side, c))
            .collect());
    }
    // Work in a basis of the saturated span of the cone.
    let ray_rows: IntMatrix = cone.rays().iter().map(|r| r.coords().to_vec()).collect();
    let perp = linalg::integer_kernel(&ray_rows, dim);
    let basis = linalg::integer_kernel(&perp, dim);
    let k = basis.len();
    let columns = linalg::to_rational(&linalg::transpose(&basis, dim));
    let to_local = |v: &[BigInt]| -> Vec<BigInt> {
        let rhs: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        linalg::solve_rational(&columns, &rhs, k)
            .expect("ray lies in its own span")
            .into_iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    };
    let local_rays: Vec<LatticeVector> = ray_rows.iter().map(|r| LatticeVector::new(side, to_local(r))).collect();
    let local = Cone::new(side, k, local_rays)?;
    let mut out: Vec<LatticeVector> = full_dimensional_basis(&local)
        .into_iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); dim];
            for (ci, b) in c.iter().zip(&basis) {
                for (vk, bk) in v.iter_mut().zip(b) {
                    *vk += ci * bk;
                }
            }
            LatticeVector::new(side, v)
        })
        .collect();
    out.sort();
    Ok(out)
}
