use std::collections::BTreeSet;

use super::{Cone, FaceRef};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Side};

/// A fan in `N`, given by its maximal cones.
///
/// Rays are numbered globally in order of first appearance; every cone of the
/// fan is a [`FaceRef`] into that list. Chart `i` is the `i`-th maximal cone,
/// whose own ray order is kept so that a single cone's indices agree with the
/// fan's in [`Fan::from_cone`].
#[derive(Debug, Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    charts: Vec<Cone>,
    chart_rays: Vec<Vec<usize>>,
    cones: Vec<FaceRef>,
}

impl Fan {
    pub fn new(dim: usize, cones: Vec<Cone>) -> Result<Fan> {
        let mut rays: Vec<LatticeVector> = Vec::new();
        let mut chart_rays = Vec::new();
        for c in &cones {
            if c.side() != Side::N || c.ambient_dim() != dim {
                return Err(Error::InvalidFan(format!(
                    "cone {:?} is not in N of dimension {dim}",
                    c.rays()
                )));
            }
            let idx: Vec<usize> = c
                .rays()
                .iter()
                .map(|r| match rays.iter().position(|x| x == r) {
                    Some(i) => i,
                    None => {
                        rays.push(r.clone());
                        rays.len() - 1
                    }
                })
                .collect();
            chart_rays.push(idx);
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                check_meeting(&cones[i], &chart_rays[i], &cones[j], &chart_rays[j], &rays)?;
            }
        }
        let mut all: BTreeSet<FaceRef> = BTreeSet::new();
        for (c, idx) in cones.iter().zip(&chart_rays) {
            for f in c.faces() {
                all.insert(FaceRef::new(f.rays().iter().map(|&k| idx[k]).collect()));
            }
        }
        // drop input cones that are faces of other input cones
        let mut keep = Vec::new();
        for i in 0..cones.len() {
            let gi = FaceRef::new(chart_rays[i].clone());
            let dominated = (0..cones.len()).any(|j| {
                let gj = FaceRef::new(chart_rays[j].clone());
                j != i && gi.is_subface_of(&gj) && (gi != gj || j < i)
            });
            if !dominated {
                keep.push(i);
            }
        }
        Ok(Fan {
            dim,
            rays,
            charts: keep.iter().map(|&i| cones[i].clone()).collect(),
            chart_rays: keep.iter().map(|&i| chart_rays[i].clone()).collect(),
            cones: all.into_iter().collect(),
        })
    }

    /// The fan of all faces of one cone.
    pub fn from_cone(cone: Cone) -> Fan {
        let dim = cone.ambient_dim();
        Fan::new(dim, vec![cone]).expect("faces of one cone form a fan")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Every cone of the fan, sorted by global ray indices.
    pub fn cones(&self) -> &[FaceRef] {
        &self.cones
    }

    /// The maximal cones, which serve as affine charts.
    pub fn charts(&self) -> &[Cone] {
        &self.charts
    }

    pub fn maximal(&self) -> Vec<FaceRef> {
        self.chart_rays.iter().map(|r| FaceRef::new(r.clone())).collect()
    }

    pub fn contains_cone(&self, f: &FaceRef) -> bool {
        self.cones.binary_search(f).is_ok()
    }

    /// `f` expressed in the local ray indices of chart `i`, if it is a face of it.
    pub fn local_face(&self, chart: usize, f: &FaceRef) -> Option<FaceRef> {
        let idx = &self.chart_rays[chart];
        let local: Option<Vec<usize>> = f.rays().iter().map(|g| idx.iter().position(|x| x == g)).collect();
        let local = FaceRef::new(local?);
        self.charts[chart].is_face(&local).then_some(local)
    }

    pub fn global_face(&self, chart: usize, local: &FaceRef) -> FaceRef {
        FaceRef::new(local.rays().iter().map(|&k| self.chart_rays[chart][k]).collect())
    }

    /// Charts having `f` as a face, in order.
    pub fn charts_containing(&self, f: &FaceRef) -> Vec<usize> {
        (0..self.charts.len())
            .filter(|&i| self.local_face(i, f).is_some())
            .collect()
    }

    pub fn cone(&self, f: &FaceRef) -> Result<Cone> {
        if !self.contains_cone(f) {
            return Err(Error::NotAFace(f.rays().to_vec()));
        }
        Cone::new(
            Side::N,
            self.dim,
            f.rays().iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }
}

fn check_meeting(a: &Cone, ai: &[usize], b: &Cone, bi: &[usize], rays: &[LatticeVector]) -> Result<()> {
    let meet = a.intersection(b)?;
    let mut global = Vec::new();
    for r in meet.rays() {
        match rays.iter().position(|x| x == r) {
            Some(g) if ai.contains(&g) && bi.contains(&g) => global.push(g),
            _ => {
                return Err(Error::InvalidFan(format!(
                    "cones {:?} and {:?} meet in a cone that is not a common face",
                    a.rays(),
                    b.rays()
                )))
            }
        }
    }
    for (c, idx) in [(a, ai), (b, bi)] {
        let local = FaceRef::new(
            global
                .iter()
                .map(|g| idx.iter().position(|x| x == g).unwrap())
                .collect(),
        );
        if !c.is_face(&local) {
            return Err(Error::InvalidFan(format!(
                "cones {:?} and {:?} meet in a cone that is not a common face",
                a.rays(),
                b.rays()
            )));
        }
    }
    Ok(())
}
