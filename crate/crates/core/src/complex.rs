//! Finite abstract simplicial complexes.
//!
//! A complex is stored by its maximal facets. The full face lattice is
//! materialized once at construction and shared behind an `Arc`, so clones
//! are cheap and every query is a lookup.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A nonempty set of vertices, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from vertex ids; duplicates are merged.
    ///
    /// Panics if `vertices` is empty. The empty simplex is never represented.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        Self::try_new(vertices).expect("a simplex needs at least one vertex")
    }

    pub fn try_new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Option<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            None
        } else {
            Some(Simplex(v))
        }
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn with_vertex(&self, v: Vertex) -> Simplex {
        Simplex::new(self.0.iter().copied().chain(std::iter::once(v)))
    }

    /// `self` minus `other`, or `None` when nothing is left.
    pub fn difference(&self, other: &Simplex) -> Option<Simplex> {
        Simplex::try_new(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)))
    }

    pub fn without_vertex(&self, v: Vertex) -> Option<Simplex> {
        Simplex::try_new(self.0.iter().copied().filter(|w| *w != v))
    }

    pub fn intersects(&self, other: &Simplex) -> bool {
        self.0.iter().any(|v| other.contains_vertex(*v))
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }

    /// Codimension-one faces, in order of the omitted vertex position.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.0.len() < 2 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    /// Order by dimension first, then lexicographically.
    pub fn cmp_graded(&self, other: &Simplex) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[Vertex]> for Simplex {
    fn from(v: &[Vertex]) -> Self {
        Simplex::new(v.iter().copied())
    }
}

#[derive(Clone)]
pub struct SimplicialComplex {
    facets: Arc<BTreeSet<Simplex>>,
    faces: Arc<BTreeSet<Simplex>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex").field("facets", &self.facets).finish()
    }
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            facets: Arc::new(BTreeSet::new()),
            faces: Arc::new(BTreeSet::new()),
        }
    }

    /// The downward closure of `simplices`.
    pub fn new<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut faces = BTreeSet::new();
        for s in simplices {
            if faces.contains(&s) {
                continue;
            }
            faces.extend(s.faces());
        }
        Self::from_closed(faces)
    }

    fn from_closed(faces: BTreeSet<Simplex>) -> Self {
        let verts: Vec<Vertex> = faces
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s.vertices()[0])
            .collect();
        // a face is maximal iff no one-vertex extension is present
        let facets = faces
            .iter()
            .filter(|s| {
                !verts
                    .iter()
                    .any(|v| !s.contains_vertex(*v) && faces.contains(&s.with_vertex(*v)))
            })
            .cloned()
            .collect();
        SimplicialComplex {
            facets: Arc::new(facets),
            faces: Arc::new(faces),
        }
    }

    pub fn from_facets<I, V>(facets: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: IntoIterator<Item = Vertex>,
    {
        Self::new(facets.into_iter().filter_map(Simplex::try_new))
    }

    /// The full simplex on `vertices`.
    pub fn full_simplex<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        match Simplex::try_new(vertices) {
            Some(s) => Self::new([s]),
            None => Self::empty(),
        }
    }

    /// The boundary of the simplex on `vertices`.
    pub fn simplex_boundary<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        match Simplex::try_new(vertices) {
            Some(s) => Self::new(s.boundary_faces()),
            None => Self::empty(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn dim(&self) -> i32 {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn facets(&self) -> impl Iterator<Item = &Simplex> {
        self.facets.iter()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Every simplex, in lexicographic order.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter()
    }

    pub fn num_simplices(&self) -> usize {
        self.faces.len()
    }

    /// Every simplex, ordered by dimension and then lexicographically.
    pub fn simplices_graded(&self) -> Vec<Simplex> {
        let mut v: Vec<Simplex> = self.faces.iter().cloned().collect();
        v.sort_by(Simplex::cmp_graded);
        v
    }

    pub fn simplices_of_dim(&self, k: i32) -> Vec<Simplex> {
        self.faces.iter().filter(|s| s.dim() == k).cloned().collect()
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.faces
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s.vertices()[0])
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.faces.iter().filter(|s| s.len() == 1).count()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.faces.contains(s)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.faces.contains(&Simplex::vertex(v))
    }

    /// Number of simplices in each dimension, starting at 0.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for s in self.faces.iter() {
            f[s.dim() as usize] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, n)| if k % 2 == 0 { *n as i64 } else { -(*n as i64) })
            .sum()
    }

    /// `self` is a subcomplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|s| other.contains(s))
    }

    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(s) {
            return Err(Error::SimplexNotInComplex(s.clone()));
        }
        Ok(SimplicialComplex::new(
            self.facets
                .iter()
                .filter(|f| s.is_face_of(f))
                .filter_map(|f| f.difference(s)),
        ))
    }

    /// The closed star `s * link(s)`.
    pub fn star(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(s) {
            return Err(Error::SimplexNotInComplex(s.clone()));
        }
        Ok(SimplicialComplex::new(
            self.facets.iter().filter(|f| s.is_face_of(f)).cloned(),
        ))
    }

    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mine = self.vertices();
        if let Some(v) = other.vertices().into_iter().find(|v| mine.contains(v)) {
            return Err(Error::VertexCollision(v));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in self.facets.iter() {
            for b in other.facets.iter() {
                out.push(a.union(b));
            }
        }
        Ok(SimplicialComplex::new(out))
    }

    pub fn cone(&self, apex: Vertex) -> Result<SimplicialComplex> {
        SimplicialComplex::full_simplex([apex]).join(self)
    }

    pub fn skeleton(&self, k: i32) -> SimplicialComplex {
        SimplicialComplex::new(self.faces.iter().filter(|s| s.dim() <= k).cloned())
    }

    /// The full subcomplex spanned by `vertices`.
    pub fn full_subcomplex(&self, vertices: &BTreeSet<Vertex>) -> SimplicialComplex {
        let faces: BTreeSet<Simplex> = self
            .faces
            .iter()
            .filter(|s| s.vertices().iter().all(|v| vertices.contains(v)))
            .cloned()
            .collect();
        Self::from_closed(faces)
    }

    /// Every simplex of `self` whose vertices all lie in `sub` belongs to `sub`.
    pub fn is_full_subcomplex(&self, sub: &SimplicialComplex) -> bool {
        let vs = sub.vertices();
        sub.is_subcomplex_of(self)
            && self
                .faces
                .iter()
                .filter(|s| s.vertices().iter().all(|v| vs.contains(v)))
                .all(|s| sub.contains(s))
    }

    /// Restriction to the simplices accepted by `keep`. `keep` must be closed
    /// under taking faces for the result to be meaningful.
    pub fn filter<F: Fn(&Simplex) -> bool>(&self, keep: F) -> SimplicialComplex {
        Self::from_closed(self.faces.iter().filter(|s| keep(s)).cloned().collect())
    }

    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, f: F) -> SimplicialComplex {
        SimplicialComplex::new(
            self.facets
                .iter()
                .map(|s| Simplex::new(s.vertices().iter().map(|v| f(*v)))),
        )
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::new(self.facets.iter().chain(other.facets.iter()).cloned())
    }

    pub fn barycentric(&self) -> Result<SimplicialComplex> {
        self.barycentric_with_carriers().map(|(c, _)| c)
    }

    /// Barycentric subdivision together with the carrier simplex of every new
    /// vertex: vertex `i` of the result is `carriers[i]`. Ids are the positions
    /// of the simplices in graded order, so the output is reproducible.
    pub fn barycentric_with_carriers(&self) -> Result<(SimplicialComplex, Vec<Simplex>)> {
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let carriers = self.simplices_graded();
        let sd = chain_complex_of(&carriers, |_| true);
        Ok((sd, carriers))
    }

    /// The subcomplex of the barycentric subdivision spanned by barycenters of
    /// simplices of dimension at least `m - 1`.
    pub fn xm_subcomplex(&self, m: i32) -> Result<SimplicialComplex> {
        self.xm_subcomplex_with_carriers(m).map(|(c, _)| c)
    }

    pub fn xm_subcomplex_with_carriers(
        &self,
        m: i32,
    ) -> Result<(SimplicialComplex, Vec<Simplex>)> {
        if m < 0 {
            return Err(Error::InvalidArgument(format!("m must be >= 0, got {m}")));
        }
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let carriers = self.simplices_graded();
        let sub = chain_complex_of(&carriers, |s| s.dim() >= m - 1);
        Ok((sub, carriers))
    }
}

/// The order complex of the face poset restricted to simplices accepted by
/// `keep`; vertex ids are positions in `carriers`.
fn chain_complex_of<F: Fn(&Simplex) -> bool>(carriers: &[Simplex], keep: F) -> SimplicialComplex {
    let index: BTreeMap<&Simplex, Vertex> = carriers
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i as Vertex))
        .collect();
    let kept = |s: &Simplex| keep(s);

    // kept proper faces of `top` with no kept face strictly in between
    let lower_covers = |top: &Simplex| -> Vec<Simplex> {
        let below: Vec<Simplex> = top.faces().filter(|g| g.len() < top.len() && kept(g)).collect();
        below
            .iter()
            .filter(|g| !below.iter().any(|h| h.len() > g.len() && g.is_face_of(h)))
            .cloned()
            .collect()
    };

    fn descend(
        top: &Simplex,
        acc: &mut Vec<Vertex>,
        index: &BTreeMap<&Simplex, Vertex>,
        lower_covers: &dyn Fn(&Simplex) -> Vec<Simplex>,
        out: &mut Vec<Simplex>,
    ) {
        let covers = lower_covers(top);
        if covers.is_empty() {
            out.push(Simplex::new(acc.iter().copied()));
            return;
        }
        for g in covers {
            acc.push(index[&g]);
            descend(&g, acc, index, lower_covers, out);
            acc.pop();
        }
    }

    let kept_list: Vec<&Simplex> = carriers.iter().filter(|s| kept(s)).collect();
    let mut chains = Vec::new();
    for top in &kept_list {
        let is_max = !kept_list
            .iter()
            .any(|t| t.len() > top.len() && top.is_face_of(t));
        if is_max {
            let mut acc = vec![index[*top]];
            descend(top, &mut acc, &index, &lower_covers, &mut chains);
        }
    }
    SimplicialComplex::new(chains)
}

/// A labeling of vertices by integers drawn from a finite label set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLabeling {
    labels: BTreeMap<Vertex, u32>,
}

impl VertexLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Vertex, u32)>>(pairs: I) -> Self {
        VertexLabeling {
            labels: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, v: Vertex) -> Option<u32> {
        self.labels.get(&v).copied()
    }

    pub fn set(&mut self, v: Vertex, label: u32) {
        self.labels.insert(v, label);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.labels.iter().map(|(v, l)| (*v, *l))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Every vertex of `complex` carries a label.
    pub fn covers(&self, complex: &SimplicialComplex) -> Result<()> {
        match complex.vertices().into_iter().find(|v| !self.labels.contains_key(v)) {
            Some(v) => Err(Error::MissingLabel(v)),
            None => Ok(()),
        }
    }

    /// First simplex of `complex` with two vertices sharing a label.
    pub fn repeated_label_simplex<'a>(
        &self,
        complex: &'a SimplicialComplex,
    ) -> Option<&'a Simplex> {
        complex.simplices().filter(|s| s.len() == 2).find(|s| {
            let v = s.vertices();
            self.get(v[0]).is_some() && self.get(v[0]) == self.get(v[1])
        })
    }
}
