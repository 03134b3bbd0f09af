use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::{hconn, induced_map_homology};
use crate::maps::SimplicialMap;

/// Assignment of bad vertices `bar(σ) ⊆ σ` to every simplex, monotone and
/// idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadVertexAssignment {
    carrier: SimplicialComplex,
    bar: BTreeMap<Simplex, BTreeSet<Vertex>>,
}

fn as_simplex(set: &BTreeSet<Vertex>) -> Option<Simplex> {
    Simplex::try_new(set.iter().copied())
}

impl BadVertexAssignment {
    pub fn new(
        carrier: SimplicialComplex,
        bar: BTreeMap<Simplex, BTreeSet<Vertex>>,
    ) -> Result<Self> {
        for s in carrier.simplices_graded() {
            let Some(b) = bar.get(&s) else {
                return Err(Error::InvalidBadAssignment(s, "no value".into()));
            };
            if !b.iter().all(|v| s.contains_vertex(*v)) {
                return Err(Error::InvalidBadAssignment(s, "value is not a subset".into()));
            }
        }
        if let Some(extra) = bar.keys().find(|s| !carrier.contains(s)) {
            return Err(Error::SimplexNotInComplex(extra.clone()));
        }
        let b = BadVertexAssignment { carrier, bar };
        b.validate()?;
        Ok(b)
    }

    /// `bar(σ) = σ ∩ bad`.
    pub fn from_vertex_subset(carrier: &SimplicialComplex, bad: &BTreeSet<Vertex>) -> Self {
        let bar = carrier
            .simplices()
            .map(|s| {
                let b = s.vertices().iter().filter(|v| bad.contains(v)).copied().collect();
                (s.clone(), b)
            })
            .collect();
        BadVertexAssignment {
            carrier: carrier.clone(),
            bar,
        }
    }

    fn validate(&self) -> Result<()> {
        for s in self.carrier.simplices_graded() {
            let bs = &self.bar[&s];
            for f in s.boundary_faces() {
                if !self.bar[&f].is_subset(bs) {
                    return Err(Error::MonotonicityViolation {
                        smaller: f,
                        larger: s,
                    });
                }
            }
            if let Some(b) = as_simplex(bs) {
                if self.bar[&b] != *bs {
                    return Err(Error::IdempotenceViolation(s));
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &SimplicialComplex {
        &self.carrier
    }

    pub fn bar(&self, s: &Simplex) -> &BTreeSet<Vertex> {
        &self.bar[s]
    }

    pub fn is_bad(&self, s: &Simplex) -> bool {
        self.bar[s].len() == s.len()
    }

    pub fn bad_simplices(&self) -> Vec<Simplex> {
        self.carrier
            .simplices_graded()
            .into_iter()
            .filter(|s| self.is_bad(s))
            .collect()
    }

    /// Simplices with no bad vertices.
    pub fn good_complex(&self) -> SimplicialComplex {
        self.carrier.filter(|s| self.bar[s].is_empty())
    }

    /// Simplices `t` of the link of a bad `σ` with `bar(σ ∪ t) = σ`.
    pub fn good_link(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        if !self.carrier.contains(sigma) {
            return Err(Error::SimplexNotInComplex(sigma.clone()));
        }
        if !self.is_bad(sigma) {
            return Err(Error::NotABadSimplex(sigma.clone()));
        }
        let lk = self.carrier.link(sigma)?;
        Ok(lk.filter(|t| self.bar[&sigma.union(t)].len() == sigma.len()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadsimReport {
    pub m: i32,
    pub hypothesis_holds: bool,
    /// `(σ, hconn of its good link, required)` for the first failure.
    pub failing: Option<(Simplex, i32, i32)>,
    /// Whether the inclusion of the good complex is an isomorphism in
    /// degrees `0..=m`.
    pub isomorphism_degrees: Vec<(usize, bool)>,
    pub surjective_next: Option<bool>,
    pub conclusion_holds: Option<bool>,
}

pub fn check_badsim(b: &BadVertexAssignment, m: i32) -> Result<BadsimReport> {
    b.validate()?;
    let mut report = BadsimReport {
        m,
        hypothesis_holds: false,
        failing: None,
        isomorphism_degrees: Vec::new(),
        surjective_next: None,
        conclusion_holds: None,
    };
    for s in b.bad_simplices() {
        let need = m - s.dim();
        let h = hconn(&b.good_link(&s)?);
        if h < need {
            report.failing = Some((s, h, need));
            return Ok(report);
        }
    }
    report.hypothesis_holds = true;
    let inc = SimplicialMap::inclusion(&b.good_complex(), b.carrier())?;
    if m >= 0 {
        for d in 0..=m as usize {
            let f = induced_map_homology(&inc, d)?;
            report.isomorphism_degrees.push((d, f.is_isomorphism()));
        }
    }
    let next = induced_map_homology(&inc, (m + 1).max(0) as usize)?;
    report.surjective_next = Some(next.surjective);
    report.conclusion_holds =
        Some(report.isomorphism_degrees.iter().all(|(_, ok)| *ok) && next.surjective);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri_bad3() -> BadVertexAssignment {
        let t = SimplicialComplex::full_simplex([1, 2, 3]);
        BadVertexAssignment::from_vertex_subset(&t, &[3].into_iter().collect())
    }

    #[test]
    fn good_complex_and_link() {
        let b = tri_bad3();
        assert_eq!(b.good_complex(), SimplicialComplex::full_simplex([1, 2]));
        assert_eq!(
            b.good_link(&Simplex::new([3])).unwrap(),
            SimplicialComplex::full_simplex([1, 2])
        );
        assert_eq!(
            b.good_link(&Simplex::new([1])).unwrap_err(),
            Error::NotABadSimplex(Simplex::new([1]))
        );
    }

    #[test]
    fn badsim_triangle() {
        let r = check_badsim(&tri_bad3(), 1).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.conclusion_holds, Some(true));
    }

    #[test]
    fn badsim_circle_fails() {
        let c = SimplicialComplex::simplex_boundary([1, 2, 3]);
        let b = BadVertexAssignment::from_vertex_subset(&c, &[3].into_iter().collect());
        let r = check_badsim(&b, 0).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.failing, Some((Simplex::new([3]), -1, 0)));
    }

    #[test]
    fn rejects_non_monotone() {
        let e = SimplicialComplex::full_simplex([1, 2]);
        let mut bar: BTreeMap<Simplex, BTreeSet<Vertex>> = BTreeMap::new();
        bar.insert(Simplex::new([1]), [1].into_iter().collect());
        bar.insert(Simplex::new([2]), BTreeSet::new());
        bar.insert(Simplex::new([1, 2]), BTreeSet::new());
        assert!(matches!(
            BadVertexAssignment::new(e, bar),
            Err(Error::MonotonicityViolation { .. })
        ));
    }

    #[test]
    fn rejects_non_idempotent() {
        let e = SimplicialComplex::full_simplex([1, 2]);
        let mut bar: BTreeMap<Simplex, BTreeSet<Vertex>> = BTreeMap::new();
        bar.insert(Simplex::new([1]), BTreeSet::new());
        bar.insert(Simplex::new([2]), BTreeSet::new());
        bar.insert(Simplex::new([1, 2]), [1].into_iter().collect());
        assert_eq!(
            BadVertexAssignment::new(e, bar).unwrap_err(),
            Error::IdempotenceViolation(Simplex::new([1, 2]))
        );
    }
}
