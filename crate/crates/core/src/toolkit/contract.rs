use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::homology::{hconn, HCONN_INF};
use crate::pi1::{pi1_certificate, Pi1Certificate};

pub const COLLAPSE_BUDGET: usize = 100_000;

/// How a complex was certified contractible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contractibility {
    /// Every facet contains the apex.
    Cone(Vertex),
    /// Elementary collapses reach a point.
    Collapsible { steps: usize },
    /// Acyclic with a trivial fundamental group certificate.
    AcyclicSimplyConnected,
}

impl std::fmt::Display for Contractibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Contractibility::Cone(v) => write!(f, "cone with apex {v}"),
            Contractibility::Collapsible { steps } => write!(f, "collapsible in {steps} steps"),
            Contractibility::AcyclicSimplyConnected => write!(f, "acyclic and simply connected"),
        }
    }
}

fn cone_apex(x: &SimplicialComplex) -> Option<Vertex> {
    let mut facets = x.facets();
    let first = facets.next()?;
    let mut common: BTreeSet<Vertex> = first.vertices().iter().copied().collect();
    for f in facets {
        common.retain(|v| f.contains_vertex(*v));
        if common.is_empty() {
            return None;
        }
    }
    common.into_iter().next()
}

/// Greedy elementary collapses; `Some(steps)` if a single vertex remains.
pub fn collapse(x: &SimplicialComplex, budget: usize) -> Option<usize> {
    let mut cofacets: BTreeMap<Simplex, BTreeSet<Simplex>> =
        x.simplices().map(|s| (s.clone(), BTreeSet::new())).collect();
    for s in x.simplices() {
        if s.len() > 1 {
            for f in s.boundary_faces() {
                cofacets.get_mut(&f).unwrap().insert(s.clone());
            }
        }
    }
    let mut steps = 0;
    loop {
        if cofacets.len() == 1 {
            return Some(steps);
        }
        let free = cofacets.iter().find_map(|(t, cf)| {
            if cf.len() == 1 {
                let s = cf.iter().next().unwrap();
                cofacets[s].is_empty().then(|| (t.clone(), s.clone()))
            } else {
                None
            }
        });
        let (t, s) = free?;
        steps += 1;
        if steps > budget {
            return None;
        }
        for rem in [&s, &t] {
            cofacets.remove(rem);
            if rem.len() > 1 {
                for f in rem.boundary_faces() {
                    if let Some(c) = cofacets.get_mut(&f) {
                        c.remove(rem);
                    }
                }
            }
        }
    }
}

/// Tries cone detection, then collapses, then acyclicity plus a trivial
/// fundamental group certificate.
pub fn certify_contractible(x: &SimplicialComplex) -> Option<Contractibility> {
    if x.is_empty() {
        return None;
    }
    if let Some(v) = cone_apex(x) {
        return Some(Contractibility::Cone(v));
    }
    if let Some(steps) = collapse(x, COLLAPSE_BUDGET) {
        return Some(Contractibility::Collapsible { steps });
    }
    if hconn(x) == HCONN_INF && pi1_certificate(x) == Pi1Certificate::Yes {
        return Some(Contractibility::AcyclicSimplyConnected);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cones_and_trees() {
        let t = SimplicialComplex::full_simplex([0, 1, 2]);
        assert_eq!(certify_contractible(&t), Some(Contractibility::Cone(0)));
        let path = SimplicialComplex::from_facets([[0, 1], [1, 2], [2, 3]]);
        assert!(matches!(
            certify_contractible(&path),
            Some(Contractibility::Collapsible { steps: 3 })
        ));
        let circle = SimplicialComplex::simplex_boundary([0, 1, 2]);
        assert_eq!(certify_contractible(&circle), None);
        assert_eq!(certify_contractible(&SimplicialComplex::empty()), None);
    }
}
