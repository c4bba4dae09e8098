//! Exact integer and rational linear algebra on dense row-major matrices.
//!
//! Everything here works on `Vec<Vec<BigInt>>` so the cone and lattice code
//! can share it without committing to a matrix type.

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Non-negative gcd of the entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the content. The zero vector is returned unchanged.
pub fn make_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators and returns the primitive integer vector on the same ray.
pub fn primitive_from_rational(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from(lcm.clone())).to_integer())
        .collect();
    make_primitive(&ints)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix, ncols: usize) -> IntMatrix {
    (0..ncols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, ncols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Rank over the rationals, by fraction-free elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: IntMatrix = rows.to_vec();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let a = m[r][col].clone();
            let b = m[i][col].clone();
            for j in col..width {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            let row = make_primitive(&m[i]);
            m[i] = row;
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Row-style Hermite normal form with transforms: `u * a = h` where `u` is
/// unimodular, `u_inv` its inverse, and `h` is in echelon form with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn row_sub(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

fn col_add(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let add = q * &row[src];
        row[target] += add;
    }
}

pub fn hermite_rows(a: &IntMatrix, ncols: usize) -> Hermite {
    let m = a.len();
    let mut h = a.clone();
    let mut u = identity(m);
    let mut u_inv = identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            // smallest nonzero magnitude at or below row r, lowest index on ties
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[i][col].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h[b][col].abs() <= h[i][col].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(p) = best else { break };
            if p != r {
                h.swap(r, p);
                u.swap(r, p);
                for row in u_inv.iter_mut() {
                    row.swap(r, p);
                }
            }
            let mut clean = true;
            for i in r + 1..m {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[r][col]);
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
                col_add(&mut u_inv, r, i, &q);
                if !h[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
            for row in u_inv.iter_mut() {
                row[r] = -&row[r];
            }
        }
        for i in 0..r {
            let q = h[i][col].div_floor(&h[r][col]);
            row_sub(&mut h, i, r, &q);
            row_sub(&mut u, i, r, &q);
            col_add(&mut u_inv, r, i, &q);
        }
        pivots.push(col);
        r += 1;
    }
    Hermite { h, u, u_inv, pivots }
}

/// Canonical (Hermite) basis of the lattice `{x ∈ ℤⁿ : a·x = 0}`.
pub fn integer_kernel(a: &IntMatrix, ncols: usize) -> IntMatrix {
    if a.is_empty() {
        return identity(ncols);
    }
    let at = transpose(a, ncols);
    let herm = hermite_rows(&at, a.len());
    let basis: IntMatrix = herm.u[herm.rank()..].to_vec();
    canonical_basis(&basis, ncols)
}

/// Hermite-reduced basis of the row lattice, zero rows dropped.
pub fn canonical_basis(rows: &IntMatrix, ncols: usize) -> IntMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let herm = hermite_rows(rows, ncols);
    let k = herm.rank();
    herm.h.into_iter().take(k).collect()
}

/// Nonzero invariant factors `d₁ | d₂ | …` of an integer matrix.
pub fn elementary_divisors(a: &IntMatrix, ncols: usize) -> Vec<BigInt> {
    let mut m = a.clone();
    let mut w = ncols;
    loop {
        let herm = hermite_rows(&m, w);
        let k = herm.rank();
        let top: IntMatrix = herm.h.into_iter().take(k).collect();
        let t = transpose(&top, w);
        let herm2 = hermite_rows(&t, k);
        let k2 = herm2.rank();
        let next: IntMatrix = herm2.h.into_iter().take(k2).collect();
        let diagonal = next
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        w = k;
        m = next;
        if diagonal {
            break;
        }
    }
    let mut d: Vec<BigInt> = (0..m.len()).map(|i| m[i][i].abs()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

pub fn to_rational(a: &IntMatrix) -> RatMatrix {
    a.iter()
        .map(|row| row.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Some solution of `a x = b` over ℚ, if one exists.
#[allow(clippy::needless_range_loop)]
pub fn solve_rational(a: &RatMatrix, b: &[BigRational], ncols: usize) -> Option<Vec<BigRational>> {
    let m = a.len();
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][col].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in 0..=ncols {
                    let v = &aug[r][j] * &f;
                    aug[i][j] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][ncols].clone();
    }
    Some(x)
}

pub fn invert_rational(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let ints: IntMatrix = a.iter().map(|row| primitive_from_rational(row)).collect();
    if rank(&ints) != n {
        return None;
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        cols.push(solve_rational(a, &e, n)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Integer points of the box `lo ≤ x ≤ hi`, in lexicographic order.
pub fn box_points(lo: &[BigInt], hi: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for p in &out {
            let mut x = a.clone();
            while &x <= b {
                let mut q = p.clone();
                q.push(x.clone());
                next.push(q);
                x += 1;
            }
        }
        out = next;
    }
    out
}
