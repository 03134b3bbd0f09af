use std::collections::BTreeSet;
use std::fmt;

use crate::complex::{Simplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::{format_hconn, hconn, wcm_check, WcmResult};
use crate::maps::SimplicialMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinWitness {
    /// A target simplex with no preimage of the same dimension.
    NotSurjective(Simplex),
    /// A source simplex on which the map is not injective.
    NotInjective(Simplex),
    /// `Y(σ)` is not the join of its vertex sets.
    NotDecomposed(Simplex),
    /// `Y_x(σ)` is a proper subset of the fiber over `x`.
    Incomplete(Simplex, Vertex),
}

impl fmt::Display for JoinWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinWitness::NotSurjective(s) => write!(f, "{s} is not hit"),
            JoinWitness::NotInjective(s) => write!(f, "not injective on {s}"),
            JoinWitness::NotDecomposed(s) => write!(f, "Y({s}) is not a join"),
            JoinWitness::Incomplete(s, x) => write!(f, "Y_{x}({s}) misses part of the fiber"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinClass {
    NotJoin(JoinWitness),
    /// A join complex; the witness shows why it is not complete.
    Join(JoinWitness),
    CompleteJoin,
}

impl JoinClass {
    pub fn name(&self) -> &'static str {
        match self {
            JoinClass::NotJoin(_) => "not_join",
            JoinClass::Join(_) => "join",
            JoinClass::CompleteJoin => "complete_join",
        }
    }
}

/// Classifies `p: Y → X` as a join complex. The sets `Y(σ)` and `Y_x(σ)` are
/// recomputed from `p`.
pub fn check_join_complex(p: &SimplicialMap) -> JoinClass {
    if let Some(s) = p.non_injective_simplex() {
        return JoinClass::NotJoin(JoinWitness::NotInjective(s.clone()));
    }
    let mut incomplete = None;
    for sigma in p.target().simplices_graded() {
        let over: Vec<&Simplex> = p
            .source()
            .simplices()
            .filter(|t| t.len() == sigma.len() && p.image(t) == sigma)
            .collect();
        if over.is_empty() {
            return JoinClass::NotJoin(JoinWitness::NotSurjective(sigma));
        }
        let mut expected = 1usize;
        for x in sigma.vertices() {
            let yx: BTreeSet<Vertex> = over
                .iter()
                .flat_map(|t| t.vertices().iter().copied())
                .filter(|v| p.apply(*v) == *x)
                .collect();
            expected = expected.saturating_mul(yx.len());
            if incomplete.is_none() && yx != p.vertex_preimage(*x) {
                incomplete = Some(JoinWitness::Incomplete(sigma.clone(), *x));
            }
        }
        if over.len() != expected {
            return JoinClass::NotJoin(JoinWitness::NotDecomposed(sigma));
        }
    }
    match incomplete {
        Some(w) => JoinClass::Join(w),
        None => JoinClass::CompleteJoin,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join2Report {
    pub n: i32,
    pub target_wcm: WcmResult,
    /// Evaluated when the target is wCM.
    pub source_wcm: Option<WcmResult>,
    /// `(k, hconn source, hconn target, holds)`: a `k`-connected source
    /// forces a `k`-connected target.
    pub connectivity_clause: Vec<(i32, i32, i32, bool)>,
    pub consistent: bool,
}

pub fn check_join2(p: &SimplicialMap, n: i32) -> Result<Join2Report> {
    if check_join_complex(p) != JoinClass::CompleteJoin {
        return Err(Error::NotCompleteJoin);
    }
    let target_wcm = wcm_check(p.target(), n);
    let source_wcm = target_wcm.holds.then(|| wcm_check(p.source(), n));
    let hs = hconn(p.source());
    let ht = hconn(p.target());
    let clause: Vec<(i32, i32, i32, bool)> = (-1..=n)
        .map(|k| (k, hs, ht, hs < k || ht >= k))
        .collect();
    let consistent = source_wcm.as_ref().is_none_or(|w| w.holds) && clause.iter().all(|c| c.3);
    Ok(Join2Report {
        n,
        target_wcm,
        source_wcm,
        connectivity_clause: clause,
        consistent,
    })
}

impl fmt::Display for Join2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target wcm({}): {}", self.n, self.target_wcm.holds)?;
        if let Some(s) = &self.source_wcm {
            writeln!(f, "source wcm({}): {}", self.n, s.holds)?;
        }
        for (k, hs, ht, ok) in &self.connectivity_clause {
            writeln!(
                f,
                "k={k}: source {} target {} {}",
                format_hconn(*hs),
                format_hconn(*ht),
                if *ok { "ok" } else { "VIOLATED" }
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn bipartite(drop: bool) -> SimplicialMap {
        // a1=0 a2=1 b1=2 b2=3 over a=10 b=11
        let mut edges = vec![[0, 2], [0, 3], [1, 2], [1, 3]];
        if drop {
            edges.remove(0);
        }
        let y = SimplicialComplex::from_facets(edges);
        let x = SimplicialComplex::from_facets([[10, 11]]);
        let vm = [(0, 10), (1, 10), (2, 11), (3, 11)].into_iter().collect();
        SimplicialMap::new(y, x, vm).unwrap()
    }

    #[test]
    fn complete_and_mutated() {
        assert_eq!(check_join_complex(&bipartite(false)), JoinClass::CompleteJoin);
        assert_eq!(
            check_join_complex(&bipartite(true)),
            JoinClass::NotJoin(JoinWitness::NotDecomposed(Simplex::new([10, 11])))
        );
        let id = SimplicialMap::identity(&SimplicialComplex::simplex_boundary([0, 1, 2]));
        assert_eq!(check_join_complex(&id), JoinClass::CompleteJoin);
    }

    #[test]
    fn join2_on_square() {
        let r = check_join2(&bipartite(false), 1).unwrap();
        assert!(r.target_wcm.holds);
        assert_eq!(r.source_wcm.as_ref().map(|w| w.holds), Some(true));
        assert!(r.consistent);
        assert_eq!(check_join2(&bipartite(true), 1).unwrap_err(), Error::NotCompleteJoin);
    }
}
