//! Simplicial maps given by vertex assignments.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A vertex map that sends every simplex of `source` onto a simplex of
/// `target`. Validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self> {
        for v in source.vertices() {
            if !vertex_map.contains_key(&v) {
                return Err(Error::UnmappedVertex(v));
            }
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        // facets suffice: images of faces are faces of images
        for f in map.source.facets() {
            if !map.target.contains(&map.image(f)) {
                return Err(Error::NotSimplicial(f.clone()));
            }
        }
        Ok(map)
    }

    pub fn identity(x: &SimplicialComplex) -> Self {
        let vm = x.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialMap {
            source: x.clone(),
            target: x.clone(),
            vertex_map: vm,
        }
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(sub: &SimplicialComplex, x: &SimplicialComplex) -> Result<Self> {
        let vm = sub.vertices().into_iter().map(|v| (v, v)).collect();
        Self::new(sub.clone(), x.clone(), vm)
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_map
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.vertex_map[&v]
    }

    /// The image simplex (repeated images collapse).
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.vertex_map[v]))
    }

    /// Every target simplex is the image of a source simplex.
    pub fn is_surjective(&self) -> bool {
        let images: BTreeSet<Simplex> = self.source.simplices().map(|s| self.image(s)).collect();
        self.target.simplices().all(|t| images.contains(t))
    }

    /// Injective on the vertices of each simplex.
    pub fn is_simplexwise_injective(&self) -> bool {
        self.source.facets().all(|f| self.image(f).len() == f.len())
    }

    /// First source simplex on which the map is not injective.
    pub fn non_injective_simplex(&self) -> Option<&Simplex> {
        self.source.facets().find(|f| self.image(f).len() != f.len())
    }

    /// Source vertices mapping to `w`.
    pub fn vertex_preimage(&self, w: Vertex) -> BTreeSet<Vertex> {
        self.vertex_map
            .iter()
            .filter(|(v, img)| **img == w && self.source.contains_vertex(**v))
            .map(|(v, _)| *v)
            .collect()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        let vm = self
            .vertex_map
            .iter()
            .map(|(v, w)| match g.vertex_map.get(w) {
                Some(u) => Ok((*v, *u)),
                None => Err(Error::UnmappedVertex(*w)),
            })
            .collect::<Result<_>>()?;
        SimplicialMap::new(self.source.clone(), g.target.clone(), vm)
    }
}

/// Coefficient of the oriented image of `s` under `f`: `None` for a
/// degenerate image, otherwise the image and the sign of the vertex
/// permutation.
pub(crate) fn oriented_image(f: &SimplicialMap, s: &Simplex) -> Option<(Simplex, i64)> {
    let imgs: Vec<Vertex> = s.vertices().iter().map(|v| f.apply(*v)).collect();
    let mut sign = 1i64;
    for i in 0..imgs.len() {
        for j in i + 1..imgs.len() {
            match imgs[i].cmp(&imgs[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some((Simplex::new(imgs), sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_simplicial() {
        let path = SimplicialComplex::from_facets([[0, 1], [1, 2]]);
        let pts = SimplicialComplex::from_facets([[10], [11]]);
        let vm = [(0, 10), (1, 11), (2, 10)].into_iter().collect();
        let err = SimplicialMap::new(path, pts, vm).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial(_)));
    }

    #[test]
    fn unmapped_vertex() {
        let e = SimplicialComplex::from_facets([[0, 1]]);
        let vm = [(0, 0)].into_iter().collect();
        assert_eq!(
            SimplicialMap::new(e.clone(), e, vm).unwrap_err(),
            Error::UnmappedVertex(1)
        );
    }

    #[test]
    fn orientation_sign() {
        let t = SimplicialComplex::full_simplex([0, 1, 2]);
        let vm = [(0, 1), (1, 0), (2, 2)].into_iter().collect();
        let f = SimplicialMap::new(t.clone(), t, vm).unwrap();
        assert_eq!(
            oriented_image(&f, &Simplex::new([0, 1, 2])),
            Some((Simplex::new([0, 1, 2]), -1))
        );
    }
}
