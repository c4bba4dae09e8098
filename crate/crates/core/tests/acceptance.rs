//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Every check compares library output against an oracle written here from
//! first principles: cone membership from explicit inequalities, brute-force
//! minimality over boxes, exhaustive decomposition searches, and a separate
//! truncated-polynomial arithmetic for arcs.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use toric_arcs::arcs::{deformation_family, dominance_witness, hom_from_label, monomial_arc, OrbitLabel, OrbitSpace};
use toric_arcs::cones::{Cone, FaceRef, Fan};
use toric_arcs::ideals::{
    compact_face_points, contact_components, lift_component, polar_polytope, sing_components, MonomialIdeal,
    DEFAULT_DOUBLINGS,
};
use toric_arcs::{Extended, LatticeVector, Side};

type V = Vec<i64>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: summary,
        }
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        Outcome {
            pass: false,
            detail: format!("{} failures, first: {}", failures.len(), shown.join("; ")),
        }
    }
}

fn timed(limit: Duration, start: Instant, failures: &mut Vec<String>, what: &str) {
    let took = start.elapsed();
    if took > limit {
        failures.push(format!("{what} took {took:.2?}, limit {limit:.0?}"));
    }
}

// ---- small exact helpers over i64, independent of the library ----

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> V {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn ivec(v: &LatticeVector) -> V {
    v.coords().iter().map(|x| x.to_i64().unwrap()).collect()
}

fn lv(side: Side, v: &[i64]) -> LatticeVector {
    LatticeVector::new(side, v.iter().map(|&x| BigInt::from(x)).collect())
}

fn cone(rays: &[V]) -> Cone {
    Cone::new(Side::N, rays[0].len(), rays.iter().map(|r| lv(Side::N, r)).collect()).unwrap()
}

/// Rank by fraction-free elimination.
#[allow(clippy::needless_range_loop)]
fn rank(rows: &[V]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| num::integer::gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// All integer points of `[lo, hi]^d`.
fn grid(d: usize, lo: i64, hi: i64) -> Vec<V> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: V| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// The cone given by inequalities `⟨v, n⟩ ≥ 0`.
struct Halfspaces(Vec<V>);

impl Halfspaces {
    fn contains(&self, v: &[i64]) -> bool {
        self.0.iter().all(|n| dot(v, n) >= 0)
    }

    fn interior(&self, v: &[i64]) -> bool {
        self.0.iter().all(|n| dot(v, n) > 0)
    }
}

fn order(gens: &[V], v: &[i64]) -> i64 {
    gens.iter().map(|u| dot(v, u)).min().unwrap()
}

/// Minimal elements of a finite set under `v ≤ w ⟺ w - v ∈ σ`, pairwise.
fn pairwise_minimal(set: &[V], sigma: &Halfspaces) -> BTreeSet<V> {
    set.iter()
        .filter(|v| !set.iter().any(|w| w != *v && sigma.contains(&sub(v, w))))
        .cloned()
        .collect()
}

fn points<'a>(xs: impl Iterator<Item = &'a LatticeVector>) -> BTreeSet<V> {
    xs.map(ivec).collect()
}

// ---- 1 ----

fn a_n_family() -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=5i64 {
        let start = Instant::now();
        let sigma = cone(&[vec![1, 0], vec![1, n + 1]]);
        let got = points(sing_components(&sigma).unwrap().iter().map(|c| &c.point));
        timed(Duration::from_secs(1), start, &mut failures, &format!("A{n}"));
        let h = Halfspaces(vec![vec![0, 1], vec![n + 1, -1]]);
        let interior: Vec<V> = grid(2, 0, 2 * n).into_iter().filter(|v| h.interior(v)).collect();
        let oracle = pairwise_minimal(&interior, &h);
        let expected: BTreeSet<V> = (1..=n).map(|k| vec![1, k]).collect();
        if got != expected || oracle != expected {
            failures.push(format!("A{n}: library {got:?}, oracle {oracle:?}"));
        }
    }
    outcome(&failures, "A1..A5 singular components are (1,1)..(1,n)".into())
}

// ---- 2, 3 ----

struct Sample {
    name: &'static str,
    rays: Vec<V>,
    normals: Vec<V>,
    gens: Vec<V>,
}

fn samples() -> Vec<Sample> {
    vec![
        Sample {
            name: "A1 maximal ideal",
            rays: vec![vec![1, 0], vec![1, 2]],
            normals: vec![vec![0, 1], vec![2, -1]],
            gens: vec![vec![0, 1], vec![1, 0], vec![2, -1]],
        },
        Sample {
            name: "quadrant (2,0),(0,3)",
            rays: vec![vec![1, 0], vec![0, 1]],
            normals: vec![vec![1, 0], vec![0, 1]],
            gens: vec![vec![2, 0], vec![0, 3]],
        },
        Sample {
            name: "quadrant (2,0),(1,1),(0,3)",
            rays: vec![vec![1, 0], vec![0, 1]],
            normals: vec![vec![1, 0], vec![0, 1]],
            gens: vec![vec![2, 0], vec![1, 1], vec![0, 3]],
        },
    ]
}

fn ideal_of(s: &Sample) -> MonomialIdeal {
    let gens: Vec<LatticeVector> = s.gens.iter().map(|u| lv(Side::M, u)).collect();
    MonomialIdeal::new(&cone(&s.rays), &gens).unwrap().0
}

/// Minimal points of `{v ∈ σ : g(v) = p}` in `[0, side]^2`.
fn contact_oracle(s: &Sample, p: i64, side: i64) -> BTreeSet<V> {
    let h = Halfspaces(s.normals.clone());
    let level: Vec<V> = grid(2, 0, side)
        .into_iter()
        .filter(|v| h.contains(v) && order(&s.gens, v) == p)
        .collect();
    pairwise_minimal(&level, &h)
}

fn contact_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let start = Instant::now();
    let mut count = 0;
    for s in samples().into_iter().take(2) {
        let a = ideal_of(&s);
        for p in 1..=6i64 {
            let got = points(
                contact_components(&a, &BigInt::from(p), DEFAULT_DOUBLINGS)
                    .unwrap()
                    .iter()
                    .map(|c| &c.point),
            );
            let oracle = contact_oracle(&s, p, 4 * p);
            if got != oracle {
                failures.push(format!("{} p={p}: library {got:?}, oracle {oracle:?}", s.name));
            }
            count += 1;
        }
    }
    timed(Duration::from_secs(5), start, &mut failures, "all levels");
    outcome(&failures, format!("{count} (ideal, level) pairs match the box oracle"))
}

fn divisible_levels() -> Outcome {
    let mut failures = Vec::new();
    let mut levels = Vec::new();
    for s in samples() {
        let a = ideal_of(&s);
        let p = polar_polytope(&a, &BigInt::from(1)).unwrap().integral_level();
        let got = points(
            contact_components(&a, &p, DEFAULT_DOUBLINGS)
                .unwrap()
                .iter()
                .map(|c| &c.point),
        );
        let faces = points(compact_face_points(&a, &p).unwrap().iter());
        let pi = p.to_i64().unwrap();
        let oracle = contact_oracle(&s, pi, 4 * pi);
        if got != faces || got != oracle {
            failures.push(format!(
                "{} p={p}: minimal {got:?}, compact faces {faces:?}, oracle {oracle:?}",
                s.name
            ));
        }
        levels.push(format!("{pi}"));
    }
    outcome(&failures, format!("3 ideals at levels {}", levels.join(", ")))
}

// ---- 4, 5 ----

/// A random pointed full-dimensional cone: generators in an open halfspace.
fn random_cone(rng: &mut StdRng, d: usize, entry: i64) -> Cone {
    loop {
        let k = d + rng.gen_range(0..3);
        let gens: Vec<V> = (0..k)
            .map(|_| loop {
                let v: V = (0..d).map(|_| rng.gen_range(-entry..=entry)).collect();
                if v.iter().sum::<i64>() > 0 {
                    break v;
                }
            })
            .collect();
        if rank(&gens) < d {
            continue;
        }
        let gens: Vec<LatticeVector> = gens.iter().map(|g| lv(Side::N, g)).collect();
        if let Ok(c) = Cone::from_generators(Side::N, d, &gens) {
            return c;
        }
    }
}

fn ray_set(c: &Cone) -> BTreeSet<V> {
    c.rays().iter().map(ivec).collect()
}

/// Each dual ray must be nonnegative on `σ` and vanish on a hyperplane's worth
/// of rays, so it is a facet normal.
fn facet_normals_ok(c: &Cone) -> bool {
    let d = c.ambient_dim();
    let rays: Vec<V> = c.rays().iter().map(ivec).collect();
    c.dual_rays().iter().all(|u| {
        let u = ivec(u);
        let tight: Vec<V> = rays.iter().filter(|r| dot(r, &u) == 0).cloned().collect();
        rays.iter().all(|r| dot(r, &u) >= 0) && rank(&tight) == d - 1
    })
}

fn duality_involution() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut failures = Vec::new();
    let start = Instant::now();
    for i in 0..200 {
        let d = 2 + i % 3;
        let c = random_cone(&mut rng, d, 4);
        let dual = c.dual().unwrap();
        let back = dual.dual().unwrap();
        if ray_set(&back) != ray_set(&c) || !facet_normals_ok(&c) || !facet_normals_ok(&dual) {
            failures.push(format!("{:?}", ray_set(&c)));
        }
    }
    timed(Duration::from_secs(10), start, &mut failures, "200 cones");
    outcome(
        &failures,
        "200 random cones in dimensions 2-4 satisfy dual(dual(σ)) = σ".into(),
    )
}

struct Decomposer<'a> {
    basis: &'a [V],
    member: &'a dyn Fn(&[i64]) -> bool,
    memo: HashMap<V, bool>,
}

impl Decomposer<'_> {
    /// Whether `x` is a nonnegative integer combination of the basis. Each
    /// step lowers a positive grading, so the search terminates.
    fn decomposes(&mut self, x: &[i64]) -> bool {
        if x.iter().all(|&c| c == 0) {
            return true;
        }
        if let Some(&r) = self.memo.get(x) {
            return r;
        }
        let mut r = false;
        for b in self.basis {
            let y = sub(x, b);
            if (self.member)(&y) && self.decomposes(&y) {
                r = true;
                break;
            }
        }
        self.memo.insert(x.to_vec(), r);
        r
    }
}

fn hilbert_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut total = 0;
    for i in 0..50 {
        let d = 2 + i % 2;
        let c = random_cone(&mut rng, d, 3);
        let rays: Vec<V> = c.rays().iter().map(ivec).collect();
        let member = |u: &[i64]| rays.iter().all(|r| dot(r, u) >= 0);
        let basis: Vec<V> = c.hilbert_basis_dual().unwrap().iter().map(ivec).collect();
        total += basis.len();
        if basis.iter().any(|b| !member(b) || b.iter().all(|&x| x == 0)) {
            failures.push(format!("cone {rays:?}: basis leaves the dual cone"));
            continue;
        }
        for b in &basis {
            if basis.iter().any(|w| w != b && member(&sub(b, w))) {
                failures.push(format!("cone {rays:?}: {b:?} decomposes"));
            }
        }
        let mut dec = Decomposer {
            basis: &basis,
            member: &member,
            memo: HashMap::new(),
        };
        for x in grid(d, -3, 3) {
            if member(&x) && !dec.decomposes(&x) {
                failures.push(format!("cone {rays:?}: {x:?} does not decompose"));
            }
        }
    }
    outcome(
        &failures,
        format!("50 random cones, {total} basis elements, box [-3,3]^d covered"),
    )
}

// ---- 6 ----

/// Rows of a random unimodular matrix.
fn random_smooth(rng: &mut StdRng, d: usize) -> Cone {
    let mut m: Vec<V> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(1..5) {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let k = rng.gen_range(-2..=2);
        let rj = m[j].clone();
        m[i].iter_mut().zip(&rj).for_each(|(x, y)| *x += k * y);
    }
    if rng.gen_bool(0.5) {
        m[0].iter_mut().for_each(|x| *x = -*x);
    }
    cone(&m)
}

fn random_subset(rng: &mut StdRng, of: &[usize]) -> Vec<usize> {
    of.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}

fn random_in_cone(rng: &mut StdRng, c: &Cone, max: i64) -> LatticeVector {
    let d = c.ambient_dim();
    c.rays().iter().fold(LatticeVector::zero(Side::N, d), |acc, r| {
        &acc + &r.scale(&BigInt::from(rng.gen_range(0..=max)))
    })
}

struct Pair {
    chart: Cone,
    tau: FaceRef,
    gamma: FaceRef,
    o1: OrbitLabel,
    o2: OrbitLabel,
}

fn random_pair(rng: &mut StdRng, dominating: bool) -> Pair {
    let d = rng.gen_range(2..=3);
    let chart = random_smooth(rng, d);
    let all: Vec<usize> = (0..d).collect();
    let gamma = random_subset(rng, &all);
    let tau = FaceRef::new(random_subset(rng, &gamma));
    let gamma = FaceRef::new(gamma);
    let qt = chart.quotient_by_face(&tau).unwrap();
    let qg = chart.quotient_by_face(&gamma).unwrap();
    let v = qt.project(&random_in_cone(rng, &chart, 3));
    let v2 = if dominating {
        let rho = qg.project(&qt.lattice.lift(&v));
        &rho + &qg.project(&random_in_cone(rng, &chart, 2))
    } else {
        qg.project(&random_in_cone(rng, &chart, 3))
    };
    Pair {
        o1: OrbitLabel::new(tau.clone(), v),
        o2: OrbitLabel::new(gamma.clone(), v2),
        chart,
        tau,
        gamma,
    }
}

/// Builds the family directly, without consulting the lattice criterion.
fn family_verifies(p: &Pair) -> bool {
    let h1 = hom_from_label(&p.chart, &p.o1).unwrap();
    let h2 = hom_from_label(&p.chart, &p.o2).unwrap();
    let m = h1.max_finite().max(h2.max_finite());
    let precision: u64 = (BigInt::from(2) * m + BigInt::from(1)).to_u64().unwrap();
    let v = p.chart.quotient_by_face(&p.tau).unwrap().lattice.lift(p.o1.point());
    let v2 = p.chart.quotient_by_face(&p.gamma).unwrap().lattice.lift(p.o2.point());
    match deformation_family(
        &p.chart,
        &p.tau,
        &v,
        &p.gamma,
        &v2,
        h1.values().to_vec(),
        h2.values().to_vec(),
        precision,
    ) {
        Ok(w) => w.report.verified() && w.report.precision == precision,
        Err(_) => false,
    }
}

fn witness_agreement() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut agree_random = 0;
    let mut positives = 0;
    for i in 0..200 {
        let dominating = i < 100;
        let p = random_pair(&mut rng, dominating);
        let fan = Fan::from_cone(p.chart.clone());
        let lattice = OrbitSpace::new(&fan).unwrap().dominates(&p.o1, &p.o2).unwrap();
        let family = family_verifies(&p);
        if dominating {
            let witness = dominance_witness(&fan, &p.o1, &p.o2, None).map(|w| w.report.verified());
            if !lattice || !family || witness != Ok(true) {
                failures.push(format!(
                    "{:?} {:?} -> {:?} {:?}: lattice {lattice}, family {family}, witness {witness:?}",
                    p.tau.rays(),
                    ivec(p.o1.point()),
                    p.gamma.rays(),
                    ivec(p.o2.point())
                ));
            }
        } else if lattice != family {
            failures.push(format!("random pair disagrees: lattice {lattice}, family {family}"));
        } else {
            agree_random += 1;
            positives += usize::from(lattice);
        }
    }
    outcome(
        &failures,
        format!("100 dominating pairs verified; {agree_random} random pairs agree ({positives} dominating)"),
    )
}

// ---- 7 ----

fn order_axioms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut failures = Vec::new();
    let cases: Vec<(Vec<V>, Vec<V>)> = vec![
        (vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1], vec![1, 0], vec![2, -1]]),
        (vec![vec![1, 0], vec![1, 3]], vec![vec![0, 1], vec![1, 0], vec![3, -1]]),
        (vec![vec![1, 0], vec![0, 1]], vec![vec![2, 0], vec![0, 3]]),
        (
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![2, 0, -1]],
        ),
    ];
    let mut checks = 0usize;
    for (rays, gens) in &cases {
        let c = cone(rays);
        let basis = c.hilbert_basis().unwrap();
        let d = c.ambient_dim();
        let rand_point = |rng: &mut StdRng| {
            basis.iter().fold(LatticeVector::zero(Side::N, d), |acc, b| {
                &acc + &b.scale(&BigInt::from(rng.gen_range(0..3)))
            })
        };
        let leq = |a: &LatticeVector, b: &LatticeVector| c.leq(a, b).unwrap();
        for _ in 0..1000 {
            let x = rand_point(&mut rng);
            // bias toward comparable triples
            let y = if rng.gen_bool(0.5) {
                &x + &rand_point(&mut rng)
            } else {
                rand_point(&mut rng)
            };
            let z = if rng.gen_bool(0.5) {
                &y + &rand_point(&mut rng)
            } else {
                rand_point(&mut rng)
            };
            if !leq(&x, &x) {
                failures.push(format!("reflexivity fails at {x}"));
            }
            if leq(&x, &y) && leq(&y, &x) && x != y {
                failures.push(format!("antisymmetry fails at {x}, {y}"));
            }
            if leq(&x, &y) && leq(&y, &z) && !leq(&x, &z) {
                failures.push(format!("transitivity fails at {x}, {y}, {z}"));
            }
            checks += 3;
        }

        let gl: Vec<LatticeVector> = gens.iter().map(|u| lv(Side::M, u)).collect();
        let a = MonomialIdeal::new(&c, &gl).unwrap().0;
        let g = |v: &LatticeVector| a.order_function(v).unwrap();
        for _ in 0..1000 {
            let v = rand_point(&mut rng);
            let w = rand_point(&mut rng);
            let k = BigInt::from(rng.gen_range(0..6));
            if g(&v.scale(&k)) != &k * g(&v) {
                failures.push(format!("homogeneity fails at {v}, k = {k}"));
            }
            if g(&(&v + &w)) < g(&v) {
                failures.push(format!("monotonicity fails at {v} + {w}"));
            }
            if BigInt::from(order(gens, &ivec(&v))) != g(&v) {
                failures.push(format!("g({v}) differs from the direct minimum"));
            }
            checks += 3;
        }

        let fan = Fan::from_cone(c.clone());
        let space = OrbitSpace::new(&fan).unwrap();
        let nodes = space.poset(2).nodes;
        for _ in 0..1000 {
            let pick = |rng: &mut StdRng| &nodes[rng.gen_range(0..nodes.len())];
            let (o1, o2, o3) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let dom = |a: &OrbitLabel, b: &OrbitLabel| space.dominates(a, b).unwrap();
            if dom(o1, o2) && dom(o2, o3) && !dom(o1, o3) {
                failures.push(format!("dominance transitivity fails at {o1:?}, {o2:?}, {o3:?}"));
            }
            checks += 1;
        }
    }
    outcome(&failures, format!("{checks} checks on 4 cones, zero violations"))
}

// ---- 8, 9 ----

/// Truncated polynomial in `t` with rational coefficients.
#[derive(Clone)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn mul(&self, o: &Poly, n: usize) -> Poly {
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                if i + j <= n {
                    out[i + j] += a * b;
                }
            }
        }
        Poly(out)
    }

    /// Inverse of a unit, by the geometric series in its non-constant part.
    fn inverse(&self, n: usize) -> Poly {
        let c = self.0[0].clone();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = c.recip();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k.min(self.0.len() - 1) {
                s += &self.0[j] * &out[k - j];
            }
            out[k] = -s / &c;
        }
        Poly(out)
    }

    fn order(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }
}

fn q(rng: &mut StdRng) -> BigRational {
    loop {
        let n = rng.gen_range(-4..=4);
        if n != 0 {
            return BigRational::new(BigInt::from(n), BigInt::from(rng.gen_range(1..4)));
        }
    }
}

/// The image of `x^u` under `t^v` twisted by a random point of the arc torus:
/// units `w_j` on the standard basis of `M`, so `x^u ↦ ∏ w_j^{u_j} · t^⟨v,u⟩`.
fn twisted_order(units: &[Poly], lift: &[i64], in_perp: bool, u: &[i64], n: usize) -> Option<usize> {
    if !in_perp {
        return None;
    }
    let shift = dot(lift, u);
    assert!(shift >= 0);
    let shift = shift as usize;
    let mut s = Poly(vec![BigRational::from_integer(BigInt::from(1))]);
    for (w, &e) in units.iter().zip(u) {
        let base = if e < 0 { w.inverse(n) } else { w.clone() };
        for _ in 0..e.unsigned_abs() {
            s = s.mul(&base, n);
        }
    }
    let mut shifted = vec![BigRational::zero(); n + 1];
    for (k, c) in s.0.iter().enumerate() {
        if k + shift <= n {
            shifted[k + shift] = c.clone();
        }
    }
    Poly(shifted).order()
}

fn a1_ideals() -> (Cone, Vec<Vec<V>>) {
    (
        cone(&[vec![1, 0], vec![1, 2]]),
        vec![
            vec![vec![0, 1], vec![1, 0], vec![2, -1]],
            vec![vec![0, 2], vec![1, 1], vec![4, -2]],
            vec![vec![1, 0], vec![0, 3]],
        ],
    )
}

fn orbit_containment() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let (chart, ideals) = a1_ideals();
    let fan = Fan::from_cone(chart.clone());
    let nodes = OrbitSpace::new(&fan).unwrap().poset(3).nodes;
    let mut failures = Vec::new();
    let mut checked = 0;
    for gens in &ideals {
        let gl: Vec<LatticeVector> = gens.iter().map(|u| lv(Side::M, u)).collect();
        let a = MonomialIdeal::new(&chart, &gl).unwrap().0;
        for o in &nodes {
            let g = a.order_on_label(o).unwrap();
            let quot = chart.quotient_by_face(o.stratum()).unwrap();
            let lift = ivec(&quot.lattice.lift(o.point()));
            let hom = hom_from_label(&chart, o).unwrap();
            let n = (hom.max_finite().to_usize().unwrap() + 1) * 2 + 8;
            let arc = monomial_arc(&chart, o, n as u64).unwrap();
            for (u, s) in &arc {
                let expect = if quot.lattice.annihilates(u) {
                    Some(dot(&lift, &ivec(u)) as u64)
                } else {
                    None
                };
                if s.t_order() != expect {
                    failures.push(format!("{o:?}: monomial arc has order {:?} on {u}", s.t_order()));
                }
            }
            for _ in 0..3 {
                let units: Vec<Poly> = (0..2)
                    .map(|_| Poly(vec![q(&mut rng), q(&mut rng), q(&mut rng)]))
                    .collect();
                let along = a
                    .generators()
                    .iter()
                    .filter_map(|u| twisted_order(&units, &lift, quot.lattice.annihilates(u), &ivec(u), n))
                    .min();
                let along = along.map_or(Extended::Infinite, Extended::finite);
                for p in 0..=6 {
                    let p = Extended::finite(p);
                    if (along == p) != (g == p) {
                        failures.push(format!("{o:?}: g = {g}, order along an arc = {along}"));
                    }
                }
                checked += 1;
            }
        }
    }
    outcome(
        &failures,
        format!("{} labels, {checked} twisted arcs, 3 ideals", nodes.len()),
    )
}

fn stratum_lifting() -> Outcome {
    let (chart, ideals) = a1_ideals();
    let h = Halfspaces(vec![vec![0, 1], vec![2, -1]]);
    let fan = Fan::from_cone(chart.clone());
    let nodes = OrbitSpace::new(&fan).unwrap().poset(3).nodes;
    let mut failures = Vec::new();
    let mut lifted = 0;
    for gens in &ideals {
        let gl: Vec<LatticeVector> = gens.iter().map(|u| lv(Side::M, u)).collect();
        let a = MonomialIdeal::new(&chart, &gl).unwrap().0;
        for o in nodes.iter().filter(|o| !o.stratum().is_zero()) {
            let Extended::Finite(p) = a.order_on_label(o).unwrap() else {
                continue;
            };
            let v = match lift_component(&a, o) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("{o:?}: {e}"));
                    continue;
                }
            };
            let vi = ivec(&v);
            let quot = chart.quotient_by_face(o.stratum()).unwrap();
            let reduced: Vec<V> = a.generators().iter().map(ivec).collect();
            if !h.contains(&vi) || quot.project(&v) != *o.point() || BigInt::from(order(&reduced, &vi)) != p {
                failures.push(format!("{o:?} at level {p}: lift {vi:?}"));
            }
            lifted += 1;
        }
    }
    outcome(&failures, format!("{lifted} nonzero-stratum labels lifted"))
}

// ---- 10 ----

fn cli_conformance() -> Outcome {
    let mut failures = Vec::new();
    let cases = common::cases();
    for (name, args, input) in &cases {
        let first = common::invoke(args, input);
        let second = common::invoke(args, input);
        let want = std::fs::read_to_string(common::golden(name)).unwrap_or_default();
        if first != second {
            failures.push(format!("{name}: runs differ"));
        } else if first != want {
            failures.push(format!("{name}: differs from golden"));
        }
    }
    let commands: BTreeSet<&str> = cases
        .iter()
        .map(|(_, a, _)| {
            a.iter()
                .find(|x| !x.starts_with('-') && x.parse::<i64>().is_err())
                .unwrap()
                .as_str()
        })
        .collect();
    for c in [
        "dual",
        "faces",
        "smooth",
        "hilbert",
        "orbits",
        "dominates",
        "witness",
        "contact",
        "sing",
        "newton",
        "polar",
        "valuation",
    ] {
        if !commands.contains(c) {
            failures.push(format!("no golden for {c}"));
        }
    }
    outcome(
        &failures,
        format!("{} golden cases byte-identical over two runs", cases.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("A_n singular components", a_n_family),
        ("contact components vs box oracle", contact_equivalence),
        ("divisible levels vs compact faces", divisible_levels),
        ("duality involution", duality_involution),
        ("Hilbert basis oracle", hilbert_oracle),
        ("dominance witness agreement", witness_agreement),
        ("order axioms", order_axioms),
        ("orbit / contact containment", orbit_containment),
        ("stratum lifting", stratum_lifting),
        ("CLI conformance", cli_conformance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!(
                "panicked: {}",
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            ),
        });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!result.pass);
        println!(
            "[{tag}] {:>2}. {name}: {} ({:.2?})",
            i + 1,
            result.detail,
            start.elapsed()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
