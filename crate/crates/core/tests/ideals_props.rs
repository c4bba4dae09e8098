use std::collections::BTreeSet;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use proptest::prelude::*;

use toric_arcs::arcs::{monomial_arc, OrbitLabel};
use toric_arcs::cones::{Cone, FaceRef};
use toric_arcs::ideals::{
    compact_face_points, contact_components, is_minimal_in_contact, MonomialIdeal, ToricValuation, DEFAULT_DOUBLINGS,
};
use toric_arcs::lattice::linalg;
use toric_arcs::{LatticeVector, Side};

fn n(v: &[i64]) -> LatticeVector {
    LatticeVector::new(Side::N, v.iter().map(|&x| BigInt::from(x)).collect())
}

/// Full-dimensional charts inside the positive orthant, so that `w ≤_σ v`
/// forces `0 ≤ w ≤ v` coordinatewise.
fn charts() -> Vec<Cone> {
    let c = |rays: &[&[i64]]| Cone::new(Side::N, rays[0].len(), rays.iter().map(|r| n(r)).collect()).unwrap();
    vec![
        c(&[&[1, 0], &[0, 1]]),
        c(&[&[1, 0], &[1, 2]]),
        c(&[&[1, 0], &[1, 3]]),
        c(&[&[2, 1], &[1, 3]]),
        c(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]),
    ]
}

/// An ideal with generators built from nonnegative combinations of the dual
/// Hilbert basis, which keeps them in `σ^∨`.
fn ideal_strategy() -> impl Strategy<Value = (usize, Vec<Vec<u8>>)> {
    (0usize..5).prop_flat_map(|ci| {
        let k = charts()[ci].hilbert_basis_dual().unwrap().len();
        (Just(ci), prop::collection::vec(prop::collection::vec(0u8..3, k), 1..4))
    })
}

fn build((ci, combos): &(usize, Vec<Vec<u8>>)) -> Option<MonomialIdeal> {
    let chart = charts()[*ci].clone();
    let basis = chart.hilbert_basis_dual().unwrap();
    let dim = chart.ambient_dim();
    let gens: Vec<LatticeVector> = combos
        .iter()
        .map(|k| {
            basis
                .iter()
                .zip(k)
                .fold(LatticeVector::zero(Side::M, dim), |acc, (b, &x)| {
                    &acc + &b.scale(&BigInt::from(x))
                })
        })
        .collect();
    MonomialIdeal::new(&chart, &gens).ok().map(|(a, _)| a)
}

fn g_oracle(a: &MonomialIdeal, v: &[i64]) -> i64 {
    a.generators()
        .iter()
        .map(|u| {
            u.coords()
                .iter()
                .zip(v)
                .map(|(x, y)| x.to_i64().unwrap() * y)
                .sum::<i64>()
        })
        .min()
        .unwrap()
}

/// Brute-force minimal points of `g⁻¹(p)` in `[0, r]^d`.
fn brute_minimal(a: &MonomialIdeal, p: i64, r: i64) -> BTreeSet<Vec<i64>> {
    let d = a.chart().ambient_dim();
    let level: Vec<Vec<i64>> = linalg::box_points(&vec![BigInt::zero(); d], &vec![BigInt::from(r); d])
        .into_iter()
        .map(|x| x.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<i64>>())
        .filter(|x| a.chart().contains(&n(x)).unwrap() && g_oracle(a, x) == p)
        .collect();
    level
        .iter()
        .filter(|v| {
            !level.iter().any(|w| {
                let diff: Vec<i64> = v.iter().zip(w.iter()).map(|(x, y)| x - y).collect();
                w != *v && a.chart().contains(&n(&diff)).unwrap()
            })
        })
        .cloned()
        .collect()
}

fn cone_point(c: &Cone, coef: &[u8]) -> LatticeVector {
    c.rays()
        .iter()
        .zip(coef)
        .fold(LatticeVector::zero(Side::N, c.ambient_dim()), |acc, (r, &k)| {
            &acc + &r.scale(&BigInt::from(k))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_function_is_homogeneous_monotone_and_superadditive(
        drawn in ideal_strategy(),
        x in prop::collection::vec(0u8..4, 3),
        y in prop::collection::vec(0u8..4, 3),
        k in 0i64..5,
    ) {
        let Some(a) = build(&drawn) else { return Ok(()); };
        let c = a.chart();
        let (v, w) = (cone_point(c, &x), cone_point(c, &y));
        let g = |p: &LatticeVector| a.order_function(p).unwrap();
        prop_assert_eq!(g(&v.scale(&BigInt::from(k))), g(&v) * k);
        let vw = &v + &w;
        prop_assert!(g(&vw) >= g(&v) + g(&w));
        prop_assert!(g(&vw) >= g(&v));
        let coords: Vec<i64> = v.coords().iter().map(|c| c.to_i64().unwrap()).collect();
        prop_assert_eq!(g(&v), BigInt::from(g_oracle(&a, &coords)));
    }

    #[test]
    fn components_match_brute_force(drawn in ideal_strategy(), p in 1i64..5) {
        let Some(a) = build(&drawn) else { return Ok(()); };
        let r = if a.chart().ambient_dim() == 2 { 14 } else { 7 };
        let pb = BigInt::from(p);
        let found = contact_components(&a, &pb, DEFAULT_DOUBLINGS).unwrap();
        let in_box: BTreeSet<Vec<i64>> = found
            .iter()
            .map(|c| c.point.coords().iter().map(|x| x.to_i64().unwrap()).collect::<Vec<i64>>())
            .filter(|x| x.iter().all(|&c| c <= r))
            .collect();
        prop_assert_eq!(&in_box, &brute_minimal(&a, p, r));
        for comp in &found {
            prop_assert_eq!(&comp.level, &pb);
            prop_assert!(is_minimal_in_contact(&a, &pb, &comp.point).unwrap());
            prop_assert_eq!(comp.v0.scale(&comp.e), comp.point.clone());
        }
        // every lattice point of a compact face sits above some component
        for x in compact_face_points(&a, &pb).unwrap() {
            prop_assert_eq!(a.order_function(&x).unwrap(), pb.clone());
            prop_assert!(found.iter().any(|comp| a.chart().leq(&comp.point, &x).unwrap()));
        }
    }

    #[test]
    fn valuation_is_the_weighted_order_and_is_additive(
        drawn in ideal_strategy(),
        other in ideal_strategy(),
        x in prop::collection::vec(0u8..4, 3),
    ) {
        let Some(f) = build(&drawn) else { return Ok(()); };
        let c = f.chart().clone();
        let Some(h) = build(&(drawn.0, other.1)) else { return Ok(()); };
        let v = cone_point(&c, &x);
        prop_assume!(!v.is_zero());
        let val = ToricValuation::new(&c, &v).unwrap();
        prop_assert_eq!(val.primitive().scale(val.multiplicity()), v.clone());
        // the ideals' reduced generators with distinct positive weights stand in for polynomials
        let poly = |a: &MonomialIdeal| -> Vec<(BigRational, LatticeVector)> {
            a.generators()
                .iter()
                .enumerate()
                .map(|(i, u)| (BigRational::from_integer(BigInt::from(i as i64 + 1)), u.clone()))
                .collect()
        };
        let (pf, ph) = (poly(&f), poly(&h));
        prop_assert_eq!(val.eval(&pf).unwrap(), f.order_function(&v).unwrap());
        // a product of polynomials with positive coefficients has no cancellation
        let mut prod: std::collections::BTreeMap<LatticeVector, BigRational> = Default::default();
        for (a, u) in &pf {
            for (b, w) in &ph {
                *prod.entry(u + w).or_insert_with(BigRational::zero) += a * b;
            }
        }
        let prod: Vec<(BigRational, LatticeVector)> = prod.into_iter().map(|(u, c)| (c, u)).collect();
        prop_assert_eq!(val.eval(&prod).unwrap(), val.eval(&pf).unwrap() + val.eval(&ph).unwrap());
    }
}

/// Along the monomial arc of an open orbit, `x^u` has `t`-order `⟨v, u⟩`.
#[test]
fn valuation_matches_the_arc_order() {
    for c in charts() {
        for coef in [[1u8, 0, 0], [1, 1, 1], [2, 3, 1], [0, 2, 0]] {
            let v = cone_point(&c, &coef);
            let val = ToricValuation::new(&c, &v).unwrap();
            let arc = monomial_arc(&c, &OrbitLabel::new(FaceRef::zero(), v.clone()), 40).unwrap();
            for (u, s) in arc {
                let single = [(BigRational::from_integer(BigInt::from(1)), u)];
                assert_eq!(BigInt::from(s.t_order().unwrap()), val.eval(&single).unwrap());
            }
        }
    }
}
