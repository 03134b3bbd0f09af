//! Extending a labeled triangulated sphere to a labeled disk whose only
//! simplices with a repeated label lie on the boundary.
//!
//! Construction: cone off `S` with an apex labeled `a ∈ E0`. Every boundary
//! vertex `v` also labeled `a` spoils the edge `{apex, v}`, so the star
//! `{apex, v} * lk(v)` is replaced by `{apex} * B_v ∪ {v} * B_v`, where `B_v`
//! is a disk bounding `lk(v)` built the same way one dimension lower with
//! labels in `E0 \ {a}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::complex::{Simplex, SimplicialComplex, Vertex, VertexLabeling};
use crate::error::{Error, Result};
use crate::homology::homology;

pub const MAX_SUPPORTED_DIM: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTriangulation {
    pub complex: SimplicialComplex,
    pub labeling: VertexLabeling,
}

fn is_pure(x: &SimplicialComplex, d: i32) -> bool {
    x.facets().all(|f| f.dim() == d)
}

/// Number of `d`-dimensional facets containing each `(d-1)`-simplex.
fn ridge_degrees(x: &SimplicialComplex, d: i32) -> Vec<(Simplex, usize)> {
    let facets: Vec<&Simplex> = x.facets().collect();
    x.simplices_of_dim(d - 1)
        .into_iter()
        .map(|r| {
            let n = facets.iter().filter(|f| r.is_face_of(f)).count();
            (r, n)
        })
        .collect()
}

fn is_cycle(x: &SimplicialComplex) -> bool {
    !x.is_empty()
        && is_pure(x, 1)
        && x.vertices()
            .iter()
            .all(|v| x.link(&Simplex::vertex(*v)).map(|l| l.num_vertices()) == Ok(2))
        && homology(x).betti_numbers() == vec![0, 1]
}

/// Closed pseudomanifold of dimension `k` with the homology of `S^k`; for
/// `k = 2` every vertex link must also be a cycle.
pub fn verify_sphere(t: &SimplicialComplex, k: i32) -> bool {
    if k < 0 || t.is_empty() || t.dim() != k || !is_pure(t, k) {
        return false;
    }
    if k >= 1 && ridge_degrees(t, k).iter().any(|(_, n)| *n != 2) {
        return false;
    }
    let h = homology(t);
    let expected: Vec<usize> = (0..=k).map(|i| usize::from(i == k)).collect();
    if h.betti_numbers() != expected || h.degrees.iter().any(|d| !d.torsion.is_empty()) {
        return false;
    }
    if k == 2 {
        return t
            .vertices()
            .iter()
            .all(|v| is_cycle(&t.link(&Simplex::vertex(*v)).unwrap()));
    }
    true
}

struct Builder {
    next: Vertex,
}

impl Builder {
    fn fresh(&mut self) -> Vertex {
        let v = self.next;
        self.next += 1;
        v
    }

    /// A `(k+1)`-disk bounding `s` (empty when `k = -1`), writing interior
    /// labels into `labels`.
    fn disk(
        &mut self,
        s: &SimplicialComplex,
        k: i32,
        e0: &BTreeSet<u32>,
        labels: &mut VertexLabeling,
    ) -> SimplicialComplex {
        if k < 0 {
            let w = self.fresh();
            labels.set(w, *e0.iter().next().unwrap());
            return SimplicialComplex::full_simplex([w]);
        }
        let verts = s.vertices();
        let count = |a: u32| verts.iter().filter(|v| labels.get(**v) == Some(a)).count();
        let a = *e0.iter().min_by_key(|a| (count(**a), **a)).unwrap();
        let apex = self.fresh();
        labels.set(apex, a);
        let clashes: Vec<Vertex> = verts
            .iter()
            .copied()
            .filter(|v| labels.get(*v) == Some(a))
            .collect();
        let mut pieces: Vec<Simplex> = Vec::new();
        for f in s.facets() {
            if !clashes.iter().any(|v| f.contains_vertex(*v)) {
                pieces.push(f.with_vertex(apex));
            }
        }
        let rest: BTreeSet<u32> = e0.iter().copied().filter(|l| *l != a).collect();
        for v in clashes {
            let lk = s.link(&Simplex::vertex(v)).unwrap();
            let bv = self.disk(&lk, k - 1, &rest, labels);
            for f in bv.facets() {
                pieces.push(f.with_vertex(apex));
                pieces.push(f.with_vertex(v));
            }
        }
        SimplicialComplex::new(pieces)
    }
}

/// Extends a labeled `k`-sphere to a labeled `(k+1)`-disk.
pub fn extend_coloring(
    s: &LabeledTriangulation,
    e0: &BTreeSet<u32>,
    k: i32,
) -> Result<LabeledTriangulation> {
    if !(0..=MAX_SUPPORTED_DIM).contains(&k) {
        return Err(Error::UnsupportedDimension(k));
    }
    if e0.len() < (k + 2) as usize {
        return Err(Error::InsufficientLabels {
            have: e0.len(),
            need: (k + 2) as usize,
        });
    }
    if !verify_sphere(&s.complex, k) {
        return Err(Error::NotASphere(k));
    }
    s.labeling.covers(&s.complex)?;
    if k >= 1 {
        if let Some(e) = s.labeling.repeated_label_simplex(&s.complex) {
            return Err(Error::ImproperBoundaryLabeling(e.clone()));
        }
    }
    let mut labeling = VertexLabeling::from_pairs(
        s.complex.vertices().into_iter().map(|v| (v, s.labeling.get(v).unwrap())),
    );
    let mut b = Builder {
        next: s.complex.vertices().last().unwrap() + 1,
    };
    let complex = b.disk(&s.complex, k, e0, &mut labeling);
    Ok(LabeledTriangulation { complex, labeling })
}

/// Upper bound on the number of interior vertices added for a `k`-sphere
/// with `n` vertices.
pub fn interior_vertex_bound(k: i32, n: usize) -> usize {
    if k < 0 {
        1
    } else {
        1 + n * interior_vertex_bound(k - 1, n)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyCheck {
    pub passed: bool,
    pub witness: Option<String>,
}

impl PropertyCheck {
    fn pass() -> Self {
        PropertyCheck {
            passed: true,
            witness: None,
        }
    }

    fn fail(w: impl fmt::Display) -> Self {
        PropertyCheck {
            passed: false,
            witness: Some(w.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    /// Boundary of `D` is `S`, `S` is full in `D`, labels agree on `S`.
    pub boundary: PropertyCheck,
    /// Simplices with a repeated label lie in `S`.
    pub repeated_labels: PropertyCheck,
    /// Interior labels lie in `E0`.
    pub interior_labels: PropertyCheck,
    /// `D` is a pure `(k+1)`-pseudomanifold with boundary and is acyclic.
    pub disk: PropertyCheck,
}

impl ExtensionReport {
    pub fn all_passed(&self) -> bool {
        self.boundary.passed && self.repeated_labels.passed && self.interior_labels.passed && self.disk.passed
    }

    pub fn entries(&self) -> [(&'static str, &PropertyCheck); 4] {
        [
            ("boundary", &self.boundary),
            ("repeated_labels", &self.repeated_labels),
            ("interior_labels", &self.interior_labels),
            ("disk", &self.disk),
        ]
    }
}

fn boundary_complex(d: &SimplicialComplex, dim: i32) -> SimplicialComplex {
    SimplicialComplex::new(
        ridge_degrees(d, dim)
            .into_iter()
            .filter(|(_, n)| *n == 1)
            .map(|(r, _)| r),
    )
}

pub fn verify_extension(
    s: &LabeledTriangulation,
    d: &LabeledTriangulation,
    e0: &BTreeSet<u32>,
    k: i32,
) -> ExtensionReport {
    let sc = &s.complex;
    let dc = &d.complex;

    let boundary = if !sc.is_subcomplex_of(dc) {
        PropertyCheck::fail("S is not contained in D")
    } else if boundary_complex(dc, k + 1) != *sc {
        PropertyCheck::fail("boundary of D differs from S")
    } else if !dc.is_full_subcomplex(sc) {
        PropertyCheck::fail("S is not a full subcomplex of D")
    } else if let Some(v) = sc.vertices().into_iter().find(|v| s.labeling.get(*v) != d.labeling.get(*v)) {
        PropertyCheck::fail(format!("label of boundary vertex {v} changed"))
    } else {
        PropertyCheck::pass()
    };

    let repeated = dc.simplices_graded().into_iter().find(|t| {
        let labels: BTreeSet<Option<u32>> = t.vertices().iter().map(|v| d.labeling.get(*v)).collect();
        labels.len() < t.len() && !sc.contains(t)
    });
    let repeated_labels = match repeated {
        Some(t) => PropertyCheck::fail(t),
        None => PropertyCheck::pass(),
    };

    let bad_interior = dc
        .vertices()
        .into_iter()
        .filter(|v| !sc.contains_vertex(*v))
        .find(|v| d.labeling.get(*v).is_none_or(|l| !e0.contains(&l)));
    let interior_labels = match bad_interior {
        Some(v) => PropertyCheck::fail(format!("vertex {v}")),
        None => PropertyCheck::pass(),
    };

    let disk = if dc.dim() != k + 1 || !is_pure(dc, k + 1) {
        PropertyCheck::fail(format!("not pure of dimension {}", k + 1))
    } else if let Some((r, n)) = ridge_degrees(dc, k + 1).into_iter().find(|(_, n)| *n > 2) {
        PropertyCheck::fail(format!("{r} lies in {n} facets"))
    } else if !homology(dc).is_trivial() {
        PropertyCheck::fail("not acyclic")
    } else {
        PropertyCheck::pass()
    };

    ExtensionReport {
        boundary,
        repeated_labels,
        interior_labels,
        disk,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(c: SimplicialComplex, pairs: &[(Vertex, u32)]) -> LabeledTriangulation {
        LabeledTriangulation {
            complex: c,
            labeling: VertexLabeling::from_pairs(pairs.iter().copied()),
        }
    }

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn spheres() {
        assert!(verify_sphere(&SimplicialComplex::simplex_boundary([0, 1, 2]), 1));
        assert!(verify_sphere(&SimplicialComplex::simplex_boundary([0, 1, 2, 3]), 2));
        assert!(!verify_sphere(&SimplicialComplex::full_simplex([0, 1, 2]), 2));
        let mobius = SimplicialComplex::from_facets([
            [0, 1, 2],
            [1, 2, 3],
            [2, 3, 4],
            [3, 4, 0],
            [4, 0, 1],
        ]);
        assert!(!verify_sphere(&mobius, 2));
    }

    #[test]
    fn two_labels_give_path_of_four() {
        // x = 1, y = 2
        let s = labeled(SimplicialComplex::from_facets([[0], [1]]), &[(0, 1), (1, 2)]);
        let d = extend_coloring(&s, &set(&[1, 2]), 0).unwrap();
        assert_eq!(d.complex.num_vertices(), 4);
        assert_eq!(d.complex.num_facets(), 3);
        assert!(verify_extension(&s, &d, &set(&[1, 2]), 0).all_passed());
    }

    #[test]
    fn third_label_gives_path_of_three() {
        let s = labeled(SimplicialComplex::from_facets([[0], [1]]), &[(0, 1), (1, 2)]);
        let d = extend_coloring(&s, &set(&[1, 2, 3]), 0).unwrap();
        assert_eq!(d.complex, SimplicialComplex::from_facets([[0, 2], [1, 2]]));
        assert_eq!(d.labeling.get(2), Some(3));
    }

    #[test]
    fn triangle_must_subdivide() {
        let s = labeled(
            SimplicialComplex::simplex_boundary([0, 1, 2]),
            &[(0, 1), (1, 2), (2, 3)],
        );
        let d = extend_coloring(&s, &set(&[1, 2, 3]), 1).unwrap();
        assert!(d.complex.num_vertices() > 4);
        assert!(verify_extension(&s, &d, &set(&[1, 2, 3]), 1).all_passed());
    }

    #[test]
    fn negative_controls() {
        let s = labeled(
            SimplicialComplex::simplex_boundary([0, 1, 2]),
            &[(0, 1), (1, 2), (2, 3)],
        );
        let cone = labeled(
            SimplicialComplex::full_simplex([0, 1, 2, 3]).skeleton(2).filter(|t| {
                t.contains_vertex(3) || t.dim() < 2
            }),
            &[(0, 1), (1, 2), (2, 3), (3, 1)],
        );
        let r = verify_extension(&s, &cone, &set(&[1, 2, 3]), 1);
        assert!(!r.repeated_labels.passed);
        assert_eq!(r.repeated_labels.witness.as_deref(), Some("{0,3}"));
        let r = verify_extension(&s, &s, &set(&[1, 2, 3]), 1);
        assert!(!r.disk.passed);
    }

    #[test]
    fn errors() {
        let s = labeled(SimplicialComplex::from_facets([[0], [1]]), &[(0, 1), (1, 2)]);
        assert_eq!(
            extend_coloring(&s, &set(&[1]), 0).unwrap_err(),
            Error::InsufficientLabels { have: 1, need: 2 }
        );
        let t = labeled(SimplicialComplex::full_simplex([0, 1]), &[(0, 1), (1, 2)]);
        assert_eq!(extend_coloring(&t, &set(&[1, 2]), 0).unwrap_err(), Error::NotASphere(0));
    }
}
