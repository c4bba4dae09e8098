//! One-parameter deformations exhibiting dominance on a smooth chart.
//!
//! With `eᵢ` the basis of `M` dual to the chart's rays, `T` the rays of the
//! first stratum and `G` those of the second, the family is
//!
//! ```text
//! x^{eᵢ} ↦ 0                    i ∈ T
//! x^{eᵢ} ↦ λ t^{aᵢ}             i ∈ G \ T
//! x^{eᵢ} ↦ t^{bᵢ} + λ t^{aᵢ}    i ∉ G
//! ```
//!
//! where `aᵢ = ⟨v, eᵢ⟩` and `bᵢ = ⟨v', eᵢ⟩` are read off the lifted points.
//! At generic `λ` the orders are those of the first orbit, at `λ = 0` those of
//! the second.

use num::{BigInt, BigRational, Signed, ToPrimitive};

use super::{hom_from_label, OrbitLabel, OrbitSpace, TruncatedSeries};
use crate::cones::{Cone, FaceRef, Fan};
use crate::error::{Error, Result};
use crate::lattice::linalg;
use crate::lattice::{Extended, LatticeVector, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub precision: u64,
    /// Every generator's image is a power series (no negative exponents).
    pub in_power_series: bool,
    pub generic_orders: Vec<Extended>,
    pub special_orders: Vec<Extended>,
    pub expected_generic: Vec<Extended>,
    pub expected_special: Vec<Extended>,
}

impl WitnessReport {
    pub fn generic_ok(&self) -> bool {
        self.in_power_series && self.generic_orders == self.expected_generic
    }

    pub fn special_ok(&self) -> bool {
        self.in_power_series && self.special_orders == self.expected_special
    }

    pub fn verified(&self) -> bool {
        self.generic_ok() && self.special_ok()
    }
}

#[derive(Debug, Clone)]
pub struct Witness {
    /// Index of the chart the family lives on.
    pub chart: usize,
    /// The basis `eᵢ` of `M` dual to the chart's rays.
    pub basis: Vec<LatticeVector>,
    pub basis_images: Vec<TruncatedSeries>,
    /// The Hilbert basis of the chart's dual semigroup and its images.
    pub generators: Vec<LatticeVector>,
    pub generator_images: Vec<TruncatedSeries>,
    pub report: WitnessReport,
}

fn order(s: &TruncatedSeries) -> Extended {
    s.t_order().map_or(Extended::Infinite, Extended::finite)
}

fn dual_basis(chart: &Cone) -> Result<Vec<LatticeVector>> {
    if !chart.is_smooth() || !chart.is_full_dimensional() {
        return Err(Error::Unsupported(
            "deformation witnesses are built on smooth full-dimensional charts".into(),
        ));
    }
    let n = chart.ambient_dim();
    let rows: linalg::IntMatrix = chart.rays().iter().map(|r| r.coords().to_vec()).collect();
    let inv = linalg::invert_rational(&linalg::to_rational(&rows)).expect("smooth rays form a basis");
    // columns of R⁻¹ are the dual basis
    Ok((0..n)
        .map(|j| {
            let coords = (0..n)
                .map(|i| {
                    let x: &BigRational = &inv[i][j];
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect();
            LatticeVector::new(Side::M, coords)
        })
        .collect())
}

/// The family for given lifts `v ∈ N` of the first point and `v2 ∈ N` of the
/// second, on faces `tau ⊆ gamma` of a smooth chart, without checking that
/// the first orbit dominates the second. Verification is left to the report.
#[allow(clippy::too_many_arguments)]
pub fn deformation_family(
    chart: &Cone,
    tau: &FaceRef,
    v: &LatticeVector,
    gamma: &FaceRef,
    v2: &LatticeVector,
    expected_generic: Vec<Extended>,
    expected_special: Vec<Extended>,
    precision: u64,
) -> Result<Witness> {
    let basis = dual_basis(chart)?;
    let mut basis_images = Vec::with_capacity(basis.len());
    for (i, e) in basis.iter().enumerate() {
        let a = linalg::dot(v.coords(), e.coords());
        let b = linalg::dot(v2.coords(), e.coords());
        let image = if tau.rays().contains(&i) {
            TruncatedSeries::zero(precision)
        } else if gamma.rays().contains(&i) {
            TruncatedSeries::lambda_t_power(&a, precision)?
        } else {
            TruncatedSeries::t_power(&b, precision)?.add(&TruncatedSeries::lambda_t_power(&a, precision)?)
        };
        basis_images.push(image);
    }
    let generators = chart.hilbert_basis_dual()?;
    let mut in_power_series = true;
    let mut generator_images = Vec::with_capacity(generators.len());
    for u in &generators {
        let mut image = TruncatedSeries::one(precision);
        for (r, phi) in chart.rays().iter().zip(&basis_images) {
            let c = linalg::dot(r.coords(), u.coords());
            if c.is_negative() {
                in_power_series = false;
                continue;
            }
            let c = c
                .to_u64()
                .ok_or_else(|| Error::Unsupported(format!("exponent {c} is too large")))?;
            image = image.mul(&phi.pow(c));
        }
        generator_images.push(image);
    }
    let generic_orders = generator_images.iter().map(order).collect();
    let special_orders = generator_images.iter().map(|s| order(&s.at_lambda_zero())).collect();
    Ok(Witness {
        chart: 0,
        basis,
        basis_images,
        generators,
        generator_images,
        report: WitnessReport {
            precision,
            in_power_series,
            generic_orders,
            special_orders,
            expected_generic,
            expected_special,
        },
    })
}

/// An explicit family whose generic member lies in the orbit of `o1` and
/// whose special member lies in the orbit of `o2`.
///
/// The default precision is `2·m + 1` for `m` the largest finite order of
/// either orbit on the chart's Hilbert basis.
pub fn dominance_witness(fan: &Fan, o1: &OrbitLabel, o2: &OrbitLabel, precision: Option<u64>) -> Result<Witness> {
    let space = OrbitSpace::new(fan)?;
    space.validate(o1)?;
    space.validate(o2)?;
    let good: Vec<usize> = (0..fan.charts().len())
        .filter(|&i| space.dominates_in_chart(i, o1, o2))
        .collect();
    if good.is_empty() {
        return Err(Error::NotDominated);
    }
    let Some(&chart_index) = good
        .iter()
        .find(|&&i| fan.charts()[i].is_smooth() && fan.charts()[i].is_full_dimensional())
    else {
        return Err(Error::Unsupported(
            "no smooth full-dimensional chart realizes the dominance".into(),
        ));
    };
    let chart = &fan.charts()[chart_index];
    let tau = fan.local_face(chart_index, o1.stratum()).expect("validated stratum");
    let gamma = fan.local_face(chart_index, o2.stratum()).expect("validated stratum");
    let l1 = OrbitLabel::new(tau.clone(), o1.point().clone());
    let l2 = OrbitLabel::new(gamma.clone(), o2.point().clone());
    let h1 = hom_from_label(chart, &l1)?;
    let h2 = hom_from_label(chart, &l2)?;
    let m = h1.max_finite().max(h2.max_finite());
    let need = BigInt::from(2) * &m + 1;
    let precision = match precision {
        Some(p) if BigInt::from(p) < need => {
            return Err(Error::PrecisionTooLow {
                needed: need.to_string(),
                given: p.to_string(),
            })
        }
        Some(p) => p,
        None => need
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("precision {need} is too large")))?,
    };
    let quotient = |f: &FaceRef| space.quotient(chart_index, f).expect("chart face");
    let v = quotient(o1.stratum()).lattice.lift(o1.point());
    let v2 = quotient(o2.stratum()).lattice.lift(o2.point());
    let mut w = deformation_family(
        chart,
        &tau,
        &v,
        &gamma,
        &v2,
        h1.values().to_vec(),
        h2.values().to_vec(),
        precision,
    )?;
    w.chart = chart_index;
    Ok(w)
}
