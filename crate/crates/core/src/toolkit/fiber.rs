use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::{hconn, induced_map_homology};
use crate::maps::SimplicialMap;

use super::contract::{certify_contractible, Contractibility};

/// Full preimage of the closed simplex `sigma`.
pub fn fibers(p: &SimplicialMap, sigma: &Simplex) -> Result<SimplicialComplex> {
    if !p.target().contains(sigma) {
        return Err(Error::SimplexNotInComplex(sigma.clone()));
    }
    let verts: BTreeSet<Vertex> = p
        .source()
        .vertices()
        .into_iter()
        .filter(|v| sigma.contains_vertex(p.apply(*v)))
        .collect();
    Ok(p.source().full_subcomplex(&verts))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub n: i32,
    pub hypothesis_holds: bool,
    /// First closed simplex whose preimage is not `n`-connected.
    pub failing_fiber: Option<(Simplex, i32)>,
    pub source_hconn: i32,
    pub target_hconn: i32,
    /// `hconn(source) >= n` iff `hconn(target) >= n`, when the hypothesis holds.
    pub conclusion_holds: Option<bool>,
}

pub fn check_fiber_theorem(p: &SimplicialMap, n: i32) -> Result<FiberReport> {
    let mut failing = None;
    for s in p.target().simplices_graded() {
        let h = hconn(&fibers(p, &s)?);
        if h < n {
            failing = Some((s, h));
            break;
        }
    }
    let hs = hconn(p.source());
    let ht = hconn(p.target());
    let hypothesis_holds = failing.is_none();
    Ok(FiberReport {
        n,
        hypothesis_holds,
        failing_fiber: failing,
        source_hconn: hs,
        target_hconn: ht,
        conclusion_holds: hypothesis_holds.then_some((hs >= n) == (ht >= n)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fiber2Failure {
    /// A vertex of `X_m` whose image drops below dimension `m - 1`, so the
    /// induced map is undefined there.
    ImageTooSmall(Simplex),
    /// The preimage of this vertex of `Y_m` (a simplex of the target) could
    /// not be certified contractible.
    NotContractible(Simplex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber2Report {
    pub m: i32,
    pub hypothesis_holds: bool,
    pub failure: Option<Fiber2Failure>,
    pub certificates: Vec<(Simplex, Contractibility)>,
    /// Whether `(p_m)_*` is an isomorphism in each degree.
    pub isomorphism_degrees: Vec<(usize, bool)>,
    pub conclusion_holds: Option<bool>,
}

/// The induced map `p_m: X_m → Y_m`, `τ ↦ p(τ)`.
pub fn induced_xm_map(p: &SimplicialMap, m: i32) -> Result<std::result::Result<SimplicialMap, Simplex>> {
    let (xm, xc) = p.source().xm_subcomplex_with_carriers(m)?;
    let (ym, yc) = p.target().xm_subcomplex_with_carriers(m)?;
    let y_index: BTreeMap<&Simplex, Vertex> =
        yc.iter().enumerate().map(|(i, s)| (s, i as Vertex)).collect();
    let mut vm = BTreeMap::new();
    for v in xm.vertices() {
        let tau = &xc[v as usize];
        let img = p.image(tau);
        match y_index.get(&img) {
            Some(w) if img.dim() >= m - 1 => {
                vm.insert(v, *w);
            }
            _ => return Ok(Err(tau.clone())),
        }
    }
    Ok(Ok(SimplicialMap::new(xm, ym, vm)?))
}

pub fn check_fiber2(p: &SimplicialMap, m: i32) -> Result<Fiber2Report> {
    if m < 0 {
        return Err(Error::InvalidArgument(format!("m must be >= 0, got {m}")));
    }
    let mut report = Fiber2Report {
        m,
        hypothesis_holds: false,
        failure: None,
        certificates: Vec::new(),
        isomorphism_degrees: Vec::new(),
        conclusion_holds: None,
    };
    let pm = match induced_xm_map(p, m)? {
        Ok(pm) => pm,
        Err(tau) => {
            report.failure = Some(Fiber2Failure::ImageTooSmall(tau));
            return Ok(report);
        }
    };
    let (_, yc) = p.target().xm_subcomplex_with_carriers(m)?;
    for w in pm.target().vertices() {
        let pre = pm.vertex_preimage(w);
        let fiber = pm.source().full_subcomplex(&pre);
        match certify_contractible(&fiber) {
            Some(c) => report.certificates.push((yc[w as usize].clone(), c)),
            None => {
                report.failure = Some(Fiber2Failure::NotContractible(yc[w as usize].clone()));
                return Ok(report);
            }
        }
    }
    report.hypothesis_holds = true;
    let top = pm.source().dim().max(pm.target().dim()).max(0) as usize;
    for d in 0..=top {
        let f = induced_map_homology(&pm, d)?;
        report.isomorphism_degrees.push((d, f.is_isomorphism()));
    }
    report.conclusion_holds = Some(report.isomorphism_degrees.iter().all(|(_, ok)| *ok));
    Ok(report)
}
