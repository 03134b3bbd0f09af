//! Discrete simplex-rewriting flow onto a subcomplex.
//!
//! Each simplex outside `Y` moves by `Δσ = (σ \ {v_σ}) ∪ {Δv_σ}`. The
//! checker validates the three flow hypotheses, and the runner follows every
//! simplex until it lands in `Y`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::{homology, HomologyProfile};
use crate::random::random_subcomplex;

pub const DEFAULT_K_MAX: usize = 64;

/// Complexity `c`, vertex selector `Δ` and simplex selector `v_σ` on a
/// complex `X` relative to a subcomplex `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowData {
    x: SimplicialComplex,
    y: SimplicialComplex,
    c: BTreeMap<Vertex, u64>,
    delta: BTreeMap<Vertex, Vertex>,
    vsel: BTreeMap<Simplex, Vertex>,
}

impl FlowData {
    pub fn new(
        x: SimplicialComplex,
        y: SimplicialComplex,
        c: BTreeMap<Vertex, u64>,
        delta: BTreeMap<Vertex, Vertex>,
        vsel: BTreeMap<Simplex, Vertex>,
    ) -> Result<Self> {
        if !y.is_subcomplex_of(&x) {
            return Err(Error::InvalidFlowData("Y is not a subcomplex of X".into()));
        }
        for v in x.vertices() {
            match c.get(&v) {
                None => return Err(Error::InvalidFlowData(format!("c({v}) is missing"))),
                Some(0) if !y.contains_vertex(v) => {
                    return Err(Error::InvalidFlowData(format!("c({v}) = 0 but {v} is not in Y")))
                }
                Some(k) if *k > 0 && y.contains_vertex(v) => {
                    return Err(Error::InvalidFlowData(format!("c({v}) > 0 but {v} is in Y")))
                }
                _ => {}
            }
        }
        for (v, d) in &delta {
            // Link membership is left to condition 1 of the checker.
            if !x.contains_vertex(*v) || !x.contains_vertex(*d) || v == d {
                return Err(Error::InvalidFlowData(format!("delta({v}) = {d} is not another vertex of X")));
            }
        }
        for (s, v) in &vsel {
            if !s.contains_vertex(*v) || !x.contains(s) {
                return Err(Error::InvalidFlowData(format!("vsel({s}) = {v} is not a vertex of it")));
            }
        }
        if let Some(s) = x.simplices().find(|s| !y.contains(s) && !vsel.contains_key(s)) {
            return Err(Error::InvalidFlowData(format!("vsel({s}) is missing")));
        }
        Ok(FlowData { x, y, c, delta, vsel })
    }

    pub fn x(&self) -> &SimplicialComplex {
        &self.x
    }

    pub fn y(&self) -> &SimplicialComplex {
        &self.y
    }

    pub fn c(&self) -> &BTreeMap<Vertex, u64> {
        &self.c
    }

    pub fn delta(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.delta
    }

    pub fn vsel(&self) -> &BTreeMap<Simplex, Vertex> {
        &self.vsel
    }

    pub fn complexity(&self, s: &Simplex) -> u64 {
        s.vertices().iter().map(|v| self.c[v]).sum()
    }

    /// One flow step; `None` if `Δ` is undefined at `v_σ`.
    pub fn step(&self, s: &Simplex) -> Option<Simplex> {
        let v = self.vsel[s];
        let d = *self.delta.get(&v)?;
        let rest = s.without_vertex(v);
        Some(match rest {
            Some(r) => r.with_vertex(d),
            None => Simplex::vertex(d),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowCheckReport {
    pub simplices_checked: usize,
    /// Largest number of steps needed before the complexity dropped.
    pub max_descent_steps: usize,
}

pub fn check_flow_hypotheses(f: &FlowData, k_max: usize) -> Result<FlowCheckReport> {
    let outside: Vec<Simplex> = f
        .x
        .simplices_graded()
        .into_iter()
        .filter(|s| !f.y.contains(s))
        .collect();
    let violation = |condition, s: &Simplex| Error::HypothesisViolation {
        condition,
        witness: s.clone(),
    };
    // top-dimensional simplices first
    for s in outside.iter().rev() {
        let v = f.vsel[s];
        match f.delta.get(&v) {
            Some(d) if f.x.contains(&s.with_vertex(*d)) => {}
            _ => return Err(violation(1, s)),
        }
        for t in s.faces() {
            if t.contains_vertex(v) && !f.y.contains(&t) && f.vsel[&t] != v {
                return Err(violation(3, s));
            }
        }
    }
    let mut max_k = 0;
    for s in &outside {
        let c0 = f.complexity(s);
        let mut cur = s.clone();
        let mut seen = BTreeSet::new();
        let mut k = 0;
        loop {
            if f.y.contains(&cur) || (k > 0 && f.complexity(&cur) < c0) {
                break;
            }
            if k == k_max {
                return Err(Error::BudgetExceeded(k_max));
            }
            if !seen.insert(cur.clone()) {
                return Err(violation(2, s));
            }
            cur = f.step(&cur).ok_or_else(|| violation(1, &cur))?;
            k += 1;
        }
        max_k = max_k.max(k);
    }
    Ok(FlowCheckReport {
        simplices_checked: outside.len(),
        max_descent_steps: max_k,
    })
}

/// The sequence `σ, Δσ, Δ²σ, ...` ending at the first simplex of `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowTrace {
    pub simplices: Vec<Simplex>,
}

impl FlowTrace {
    pub fn start(&self) -> &Simplex {
        &self.simplices[0]
    }

    pub fn end(&self) -> &Simplex {
        self.simplices.last().unwrap()
    }

    /// Number of steps taken.
    pub fn len(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowRun {
    pub traces: Vec<FlowTrace>,
    pub max_len: usize,
}

pub fn trace(f: &FlowData, s: &Simplex, k_max: usize) -> Result<FlowTrace> {
    let limit = (k_max as u64).saturating_mul(f.complexity(s).max(1)) as usize;
    let mut out = vec![s.clone()];
    let mut cur = s.clone();
    while !f.y.contains(&cur) {
        if out.len() > limit {
            return Err(Error::NonTermination(s.clone()));
        }
        cur = match f.step(&cur) {
            Some(next) if f.x.contains(&next) => next,
            _ => {
                return Err(Error::HypothesisViolation {
                    condition: 1,
                    witness: cur,
                })
            }
        };
        out.push(cur.clone());
    }
    Ok(FlowTrace { simplices: out })
}

/// Traces of every simplex of `X`, in graded order.
pub fn run_flow(f: &FlowData, k_max: usize) -> Result<FlowRun> {
    let traces = f
        .x
        .simplices_graded()
        .iter()
        .map(|s| trace(f, s, k_max))
        .collect::<Result<Vec<_>>>()?;
    let max_len = traces.iter().map(FlowTrace::len).max().unwrap_or(0);
    Ok(FlowRun { traces, max_len })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionReport {
    pub x_homology: HomologyProfile,
    pub y_homology: HomologyProfile,
    pub equal: bool,
}

pub fn cross_check_retraction(f: &FlowData) -> RetractionReport {
    let hx = homology(&f.x);
    let hy = homology(&f.y);
    let equal = f.x.is_empty() == f.y.is_empty() && hx.same_groups(&hy);
    RetractionReport {
        x_homology: hx,
        y_homology: hy,
        equal,
    }
}

/// Grows a random `X` from `y` by `steps` vertex additions. Each new vertex
/// `w` gets the next complexity value, `Δw = u` for an existing vertex `u`,
/// and is coned over `u * L` for a random subcomplex `L` of the link of `u`.
/// The selector picks the vertex of largest complexity.
pub fn random_flow_data<R: Rng>(rng: &mut R, y: &SimplicialComplex, steps: usize) -> FlowData {
    assert!(!y.is_empty());
    let mut x = y.clone();
    let mut c: BTreeMap<Vertex, u64> = y.vertices().into_iter().map(|v| (v, 0)).collect();
    let mut delta = BTreeMap::new();
    let mut next: Vertex = y.vertices().last().copied().unwrap() + 1;
    for i in 0..steps {
        let verts: Vec<Vertex> = x.vertices().into_iter().collect();
        let u = verts[rng.gen_range(0..verts.len())];
        let lk = x.link(&Simplex::vertex(u)).unwrap();
        let l = random_subcomplex(rng, &lk, 0.5);
        let base = l.cone(u).unwrap_or_else(|_| SimplicialComplex::full_simplex([u]));
        let base = if base.is_empty() { SimplicialComplex::full_simplex([u]) } else { base };
        let w = next;
        next += 1;
        let attached = base.cone(w).unwrap();
        x = x.union(&attached);
        c.insert(w, i as u64 + 1);
        delta.insert(w, u);
    }
    let vsel = x
        .simplices()
        .filter(|s| !y.contains(s))
        .map(|s| {
            let v = *s.vertices().iter().max_by_key(|v| (c[v], **v)).unwrap();
            (s.clone(), v)
        })
        .collect();
    FlowData::new(x, y.clone(), c, delta, vsel).expect("generated flow data is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied())
    }

    // a=0, b=1, c=2
    fn path_flow(delta_c: Vertex) -> FlowData {
        let x = SimplicialComplex::from_facets([[0, 1], [1, 2]]);
        let y = SimplicialComplex::full_simplex([0]);
        let c = [(0, 0), (1, 1), (2, 2)].into_iter().collect();
        let delta = [(1, 0), (2, delta_c)].into_iter().collect();
        let vsel = [(s(&[1, 2]), 2), (s(&[0, 1]), 1), (s(&[1]), 1), (s(&[2]), 2)]
            .into_iter()
            .collect();
        FlowData {
            x,
            y,
            c,
            delta,
            vsel,
        }
    }

    #[test]
    fn path_passes() {
        let f = path_flow(1);
        let r = check_flow_hypotheses(&f, DEFAULT_K_MAX).unwrap();
        assert_eq!(r.max_descent_steps, 1);
        let t = trace(&f, &s(&[1, 2]), DEFAULT_K_MAX).unwrap();
        assert_eq!(t.simplices, vec![s(&[1, 2]), s(&[1]), s(&[0])]);
        assert!(cross_check_retraction(&f).equal);
    }

    #[test]
    fn path_bad_delta() {
        let f = path_flow(0);
        assert_eq!(
            check_flow_hypotheses(&f, DEFAULT_K_MAX).unwrap_err(),
            Error::HypothesisViolation {
                condition: 1,
                witness: s(&[1, 2])
            }
        );
    }

    #[test]
    fn trace_stops_outside_x() {
        // path 0-1-2-3, delta(3) = 0 sends {2,3} to the non-edge {0,2}
        let x = SimplicialComplex::from_facets([[0, 1], [1, 2], [2, 3]]);
        let y = SimplicialComplex::full_simplex([0]);
        let c = [(0, 0), (1, 1), (2, 2), (3, 3)].into_iter().collect();
        let delta = [(1, 0), (2, 1), (3, 0)].into_iter().collect();
        let vsel = [
            (s(&[0, 1]), 1),
            (s(&[1, 2]), 2),
            (s(&[2, 3]), 3),
            (s(&[1]), 1),
            (s(&[2]), 2),
            (s(&[3]), 3),
        ]
        .into_iter()
        .collect();
        let f = FlowData::new(x, y, c, delta, vsel).unwrap();
        let bad = Error::HypothesisViolation {
            condition: 1,
            witness: s(&[2, 3]),
        };
        assert_eq!(trace(&f, &s(&[2, 3]), DEFAULT_K_MAX).unwrap_err(), bad);
        assert_eq!(check_flow_hypotheses(&f, DEFAULT_K_MAX).unwrap_err(), bad);
    }

    #[test]
    fn random_instances_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let y = crate::random::random_complex(&mut rng, 4, 2, 3);
            let f = random_flow_data(&mut rng, &y, 4);
            check_flow_hypotheses(&f, DEFAULT_K_MAX).unwrap();
            run_flow(&f, DEFAULT_K_MAX).unwrap();
            assert!(cross_check_retraction(&f).equal);
        }
    }
}
