//! Integer lattice arithmetic.
//!
//! `N` is the lattice of one-parameter subgroups and `M = Hom(N, ℤ)` the
//! character lattice. Vectors carry their side so the canonical pairing can
//! refuse to pair two vectors of the same lattice.

pub mod linalg;
mod quotient;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};

pub use quotient::{quotient_lattice, QuotientLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    N,
    M,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::N => Side::M,
            Side::M => Side::N,
        }
    }
}

/// An integer vector of `N` or `M`.
///
/// Ordering is lexicographic on coordinates (then side), which is the order
/// used for every sorted list the crate returns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
    side: Side,
}

impl LatticeVector {
    pub fn new(side: Side, coords: Vec<BigInt>) -> Self {
        LatticeVector { coords, side }
    }

    pub fn n<I, T>(coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(Side::N, coords.into_iter().map(Into::into).collect())
    }

    pub fn m<I, T>(coords: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(Side::M, coords.into_iter().map(Into::into).collect())
    }

    pub fn zero(side: Side, dim: usize) -> Self {
        Self::new(side, vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    /// Same coordinates, reinterpreted in the other lattice.
    pub fn transposed(&self) -> Self {
        Self::new(self.side.dual(), self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The canonical pairing `⟨v, u⟩` between an `N` vector and an `M` vector.
    pub fn pairing(&self, other: &LatticeVector) -> Result<BigInt> {
        if self.side == other.side {
            return Err(Error::SameSide);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(linalg::dot(&self.coords, &other.coords))
    }

    /// Writes `v = e·v₀` with `v₀` primitive and `e ≥ 1`.
    pub fn primitive_part(&self) -> Result<(BigInt, LatticeVector)> {
        let e = linalg::content(&self.coords);
        if e.is_zero() {
            return Err(Error::ZeroVector);
        }
        let v0 = self.coords.iter().map(|x| x / &e).collect();
        Ok((e, Self::new(self.side, v0)))
    }

    pub fn is_primitive(&self) -> bool {
        linalg::content(&self.coords) == BigInt::from(1)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.side, self.coords.iter().map(|x| x * k).collect())
    }

    /// Largest absolute coordinate.
    pub fn max_norm(&self) -> BigInt {
        self.coords.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    fn check_compatible(&self, other: &LatticeVector) {
        assert_eq!(self.side, other.side, "adding vectors of different lattices");
        assert_eq!(self.dim(), other.dim(), "adding vectors of different dimensions");
    }
}

impl PartialOrd for LatticeVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticeVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords).then(self.side.cmp(&other.side))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.side {
            Side::N => "N",
            Side::M => "M",
        };
        write!(f, "{tag}{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.check_compatible(rhs);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        LatticeVector::new(self.side, coords)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.check_compatible(rhs);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        LatticeVector::new(self.side, coords)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector::new(self.side, self.coords.iter().map(|x| -x).collect())
    }
}

/// `ℤ ∪ {∞}` with `∞` absorbing under addition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(BigInt),
    Infinite,
}

impl Extended {
    pub fn finite<T: Into<BigInt>>(x: T) -> Self {
        Extended::Finite(x.into())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinite => None,
        }
    }

    /// `k·x` for `k ≥ 0`, with `0·∞ = 0` (the empty sum).
    pub fn times(&self, k: &BigInt) -> Extended {
        match self {
            _ if k.is_zero() => Extended::Finite(BigInt::zero()),
            Extended::Finite(x) => Extended::Finite(x * k),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl Add for &Extended {
    type Output = Extended;

    fn add(self, rhs: &Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}
