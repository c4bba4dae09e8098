//! Double description: generators of `{x : ⟨aᵢ, x⟩ ≥ 0}` from the `aᵢ`.
//!
//! The iteration starts from the whole space (all of it lineality) and adds
//! one half-space at a time. Integer arithmetic is kept throughout: new rays
//! are positive integer combinations of old ones divided by their content.

use num::{BigInt, BigRational, Signed, Zero};

use crate::lattice::linalg::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Description {
    /// Extreme rays modulo the lineality space, each chosen orthogonal
    /// (in the standard inner product) to the lineality space. Sorted.
    pub rays: IntMatrix,
    /// Hermite basis of the lattice points of the lineality space.
    pub lineality: IntMatrix,
}

fn active_rows(constraints: &[Vec<BigInt>], x: &[BigInt]) -> IntMatrix {
    constraints
        .iter()
        .filter(|a| linalg::dot(a, x).is_zero())
        .cloned()
        .collect()
}

pub(crate) fn double_description(dim: usize, constraints: &[Vec<BigInt>]) -> Description {
    let mut lineality: IntMatrix = linalg::identity(dim);
    let mut rays: IntMatrix = Vec::new();
    let mut processed: IntMatrix = Vec::new();

    for a in constraints {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !linalg::dot(a, l).is_zero()) {
            let mut l = lineality.remove(pos);
            let mut al = linalg::dot(a, &l);
            if al.is_negative() {
                l = l.iter().map(|x| -x).collect();
                al = -al;
            }
            for other in lineality.iter_mut().chain(rays.iter_mut()) {
                let ao = linalg::dot(a, other);
                if ao.is_zero() {
                    continue;
                }
                let combined: Vec<BigInt> = other.iter().zip(&l).map(|(o, li)| &al * o - &ao * li).collect();
                *other = linalg::make_primitive(&combined);
            }
            rays.push(linalg::make_primitive(&l));
        } else {
            let prev_rank = linalg::rank(&processed);
            let values: Vec<BigInt> = rays.iter().map(|r| linalg::dot(a, r)).collect();
            let mut next: IntMatrix = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, (rp, vp)) in rays.iter().zip(&values).enumerate() {
                if !vp.is_positive() {
                    continue;
                }
                for (j, (rn, vn)) in rays.iter().zip(&values).enumerate() {
                    if !vn.is_negative() || i == j {
                        continue;
                    }
                    let common: IntMatrix = active_rows(&processed, rp)
                        .into_iter()
                        .filter(|row| linalg::dot(row, rn).is_zero())
                        .collect();
                    if prev_rank < 2 || linalg::rank(&common) != prev_rank - 2 {
                        continue;
                    }
                    let combined: Vec<BigInt> = rn.iter().zip(rp).map(|(n, p)| vp * n - vn * p).collect();
                    next.push(linalg::make_primitive(&combined));
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(a.clone());
    }

    canonicalize(dim, &processed, rays)
}

fn canonicalize(dim: usize, processed: &IntMatrix, rays: IntMatrix) -> Description {
    let nonzero: IntMatrix = processed.clone();
    let lineality = if nonzero.is_empty() {
        linalg::identity(dim)
    } else {
        linalg::integer_kernel(&nonzero, dim)
    };
    let mut out: IntMatrix = if lineality.is_empty() {
        rays
    } else {
        let gram: linalg::RatMatrix = lineality
            .iter()
            .map(|li| {
                lineality
                    .iter()
                    .map(|lj| BigRational::from_integer(linalg::dot(li, lj)))
                    .collect()
            })
            .collect();
        rays.into_iter()
            .map(|r| {
                let rhs: Vec<BigRational> = lineality
                    .iter()
                    .map(|l| BigRational::from_integer(linalg::dot(l, &r)))
                    .collect();
                let c =
                    linalg::solve_rational(&gram, &rhs, lineality.len()).expect("lineality Gram matrix is nonsingular");
                let projected: Vec<BigRational> = (0..dim)
                    .map(|k| {
                        let mut x = BigRational::from_integer(r[k].clone());
                        for (ci, l) in c.iter().zip(&lineality) {
                            x -= ci * BigRational::from_integer(l[k].clone());
                        }
                        x
                    })
                    .collect();
                linalg::primitive_from_rational(&projected)
            })
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect()
    };
    out.sort();
    out.dedup();
    Description { rays: out, lineality }
}
