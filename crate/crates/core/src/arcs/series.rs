use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// A power series in `t` and `λ` with exact rational coefficients, known
/// modulo `t^(precision+1)`. The `λ`-degree is unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    precision: u64,
    terms: BTreeMap<(u64, u64), BigRational>,
}

impl TruncatedSeries {
    pub fn zero(precision: u64) -> Self {
        TruncatedSeries {
            precision,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(precision: u64) -> Self {
        Self::constant(BigRational::one(), precision)
    }

    pub fn constant(c: BigRational, precision: u64) -> Self {
        let mut s = Self::zero(precision);
        s.insert(0, 0, c);
        s
    }

    /// `c · t^t_exp · λ^lambda_exp`; negative exponents leave the ring.
    pub fn monomial(c: BigRational, t_exp: &BigInt, lambda_exp: &BigInt, precision: u64) -> Result<Self> {
        let t: u64 = exponent(t_exp)?;
        let l: u64 = exponent(lambda_exp)?;
        let mut s = Self::zero(precision);
        s.insert(t, l, c);
        Ok(s)
    }

    /// `t^k`
    pub fn t_power(k: &BigInt, precision: u64) -> Result<Self> {
        Self::monomial(BigRational::one(), k, &BigInt::zero(), precision)
    }

    /// `λ t^k`
    pub fn lambda_t_power(k: &BigInt, precision: u64) -> Result<Self> {
        Self::monomial(BigRational::one(), k, &BigInt::one(), precision)
    }

    fn insert(&mut self, t: u64, l: u64, c: BigRational) {
        if t > self.precision || c.is_zero() {
            return;
        }
        let entry = self.terms.entry((t, l)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(t, l));
        }
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: u64, lambda: u64) -> BigRational {
        self.terms.get(&(t, lambda)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, &BigRational)> {
        self.terms.iter().map(|(&(t, l), c)| (t, l, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = Self::zero(self.precision.min(other.precision));
        for (&(t, l), c) in self.terms.iter().chain(&other.terms) {
            s.insert(t, l, c.clone());
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut s = Self::zero(self.precision.min(other.precision));
        for (&(t1, l1), c1) in &self.terms {
            for (&(t2, l2), c2) in &other.terms {
                s.insert(t1 + t2, l1 + l2, c1 * c2);
            }
        }
        s
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.precision);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Specialization `λ = 0`.
    pub fn at_lambda_zero(&self) -> Self {
        let mut s = Self::zero(self.precision);
        for (&(t, l), c) in &self.terms {
            if l == 0 {
                s.insert(t, 0, c.clone());
            }
        }
        s
    }

    /// Least `t`-degree whose coefficient, a polynomial in `λ`, is nonzero.
    /// `None` means no term survives up to the precision.
    pub fn t_order(&self) -> Option<u64> {
        self.terms.keys().map(|&(t, _)| t).min()
    }
}

fn exponent(k: &BigInt) -> Result<u64> {
    if k < &BigInt::zero() {
        return Err(Error::NegativeExponent);
    }
    u64::try_from(k).map_err(|_| Error::Unsupported(format!("exponent {k} is too large")))
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(t, l), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !c.is_one() || (t == 0 && l == 0) {
                factors.push(format!("{c}"));
            }
            match l {
                0 => {}
                1 => factors.push("λ".into()),
                _ => factors.push(format!("λ^{l}")),
            }
            match t {
                0 => {}
                1 => factors.push("t".into()),
                _ => factors.push(format!("t^{t}")),
            }
            write!(f, "{}", factors.join("·"))?;
        }
        Ok(())
    }
}
