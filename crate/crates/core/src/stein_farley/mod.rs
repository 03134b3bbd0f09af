//! Stein–Farley cube complexes for the Higman–Thompson groups `V_{d,r}`.
//!
//! Vertices are the classes described in [`SfVertex`]. `x ⪯ y` when `y`
//! arises from `x` by splitting distinct copies once each; the interval
//! `[x, y]` is then a cube of dimension `h(y) - h(x)`. A truncation keeps
//! the vertices of height at most `s` reached from the base vertex by
//! splits and by the action of a finite element set, together with every
//! cube all of whose vertices were kept.

mod vertex;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

pub use vertex::{balanced_forest, nonempty_branches, normalize_cylinders, SfVertex};

use crate::complex::{Simplex, SimplicialComplex};
use crate::cubical::{cubical_homology, Cube, CubicalComplex};
use crate::error::{Error, Result};
use crate::homology::HomologyProfile;
use crate::thompson::{Address, TreePair};

pub const DEFAULT_MAX_VERTICES: usize = 10_000;

/// Descending link of a vertex: one link vertex per ordered `d`-tuple of
/// copies, and a simplex for each family of pairwise disjoint tuples with at
/// most `height` members.
#[derive(Clone, Debug)]
pub struct DescendingLink {
    pub vertex: SfVertex,
    pub tuples: Vec<Vec<u32>>,
    pub lower: Vec<SfVertex>,
    pub complex: SimplicialComplex,
}

impl DescendingLink {
    pub fn dim(&self) -> i32 {
        self.complex.dim()
    }
}

/// Families of pairwise disjoint tuples (as index lists into `tuples`) with
/// exactly `size` members, indices increasing.
fn disjoint_families(tuples: &[Vec<u32>], size: usize) -> Vec<Vec<usize>> {
    fn rec(
        tuples: &[Vec<u32>],
        size: usize,
        start: usize,
        used: &mut Vec<u32>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..tuples.len() {
            if tuples[i].iter().any(|c| used.contains(c)) {
                continue;
            }
            used.extend(&tuples[i]);
            cur.push(i);
            rec(tuples, size, i + 1, used, cur, out);
            cur.pop();
            used.truncate(used.len() - tuples[i].len());
        }
    }
    let mut out = Vec::new();
    rec(tuples, size, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn max_family(v: &SfVertex) -> usize {
    (v.height() as usize).min((v.copies() / v.d()) as usize)
}

pub fn descending_link(v: &SfVertex) -> DescendingLink {
    let tuples = v.lower_tuples();
    let lower = v.below();
    let m = max_family(v);
    let facets = if m == 0 {
        Vec::new()
    } else {
        disjoint_families(&tuples, m)
            .into_iter()
            .map(|f| Simplex::new(f.into_iter().map(|i| i as u32)))
            .collect()
    };
    DescendingLink {
        vertex: v.clone(),
        tuples,
        lower,
        complex: SimplicialComplex::new(facets),
    }
}

/// A cube `[bottom, top]` of a truncation. `elements[mask]` is the vertex
/// where the directions in `mask` are merged; `directions` holds the
/// boundary image of each merged copy, which orders the directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeInterval {
    pub bottom: usize,
    pub top: usize,
    pub elements: Vec<usize>,
    pub directions: Vec<Vec<Address>>,
}

impl CubeInterval {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationOptions {
    pub max_vertices: usize,
    /// Rounds of applying the generators (and inverses) to every vertex,
    /// each followed by closing up under splits.
    pub gen_rounds: usize,
}

impl Default for TruncationOptions {
    fn default() -> Self {
        TruncationOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
            gen_rounds: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Truncation {
    d: u32,
    r: u32,
    s: u32,
    vertices: Vec<SfVertex>,
    index: HashMap<SfVertex, usize>,
    cubes: Vec<Vec<CubeInterval>>,
    cube_index: Vec<HashMap<(usize, usize), usize>>,
    cubical: CubicalComplex,
}

fn check_params(d: u32, r: u32, gens: &[TreePair]) -> Result<()> {
    if d < 1 || r < 1 {
        return Err(Error::InvalidArgument(format!("need d >= 1 and r >= 1, got d = {d}, r = {r}")));
    }
    for g in gens {
        if g.d() != d || g.source_roots() != r || g.target_roots() != r {
            return Err(Error::ParameterMismatch(format!(
                "generator {g} is not in V_{{{d},{r}}}"
            )));
        }
    }
    Ok(())
}

struct Builder {
    s: u32,
    cap: usize,
    seen: HashSet<SfVertex>,
    order: Vec<SfVertex>,
}

impl Builder {
    fn insert(&mut self, v: SfVertex, queue: &mut VecDeque<SfVertex>) -> Result<()> {
        if v.height() > self.s || self.seen.contains(&v) {
            return Ok(());
        }
        if self.order.len() == self.cap {
            return Err(Error::BudgetExceeded(self.cap));
        }
        self.seen.insert(v.clone());
        self.order.push(v.clone());
        queue.push_back(v);
        Ok(())
    }

    fn close_up(&mut self, mut queue: VecDeque<SfVertex>) -> Result<()> {
        while let Some(v) = queue.pop_front() {
            if v.height() < self.s {
                for w in v.above() {
                    self.insert(w, &mut queue)?;
                }
            }
        }
        Ok(())
    }
}

/// Builds the height-`s` truncation reached from the base vertex.
pub fn build_truncation(
    d: u32,
    r: u32,
    s: u32,
    gens: &[TreePair],
    opts: TruncationOptions,
) -> Result<Truncation> {
    check_params(d, r, gens)?;
    let mut b = Builder {
        s,
        cap: opts.max_vertices,
        seen: HashSet::new(),
        order: Vec::new(),
    };
    let mut queue = VecDeque::new();
    b.insert(SfVertex::base(d, r), &mut queue)?;
    b.close_up(queue)?;
    let moves: Vec<TreePair> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    for _ in 0..opts.gen_rounds {
        let snapshot = b.order.clone();
        let mut queue = VecDeque::new();
        for v in &snapshot {
            for g in &moves {
                b.insert(v.act(g)?, &mut queue)?;
            }
        }
        b.close_up(queue)?;
    }
    let mut vertices = b.order;
    vertices.sort();
    Truncation::from_vertices(d, r, s, vertices)
}

impl Truncation {
    fn from_vertices(d: u32, r: u32, s: u32, vertices: Vec<SfVertex>) -> Result<Self> {
        let index: HashMap<SfVertex, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut layers: BTreeMap<usize, Vec<CubeInterval>> = BTreeMap::new();
        layers.insert(
            0,
            (0..vertices.len())
                .map(|i| CubeInterval {
                    bottom: i,
                    top: i,
                    elements: vec![i],
                    directions: Vec::new(),
                })
                .collect(),
        );
        for (yi, y) in vertices.iter().enumerate() {
            let tuples = y.lower_tuples();
            let keys: Vec<Vec<Address>> = tuples
                .iter()
                .map(|t| {
                    normalize_cylinders(d, t.iter().flat_map(|c| y.copy_image(*c)))
                })
                .collect();
            for q in 1..=max_family(y) {
                for fam in disjoint_families(&tuples, q) {
                    let mut fam = fam;
                    fam.sort_by(|a, b| keys[*a].cmp(&keys[*b]));
                    let chosen: Vec<Vec<u32>> = fam.iter().map(|i| tuples[*i].clone()).collect();
                    let full = (1usize << q) - 1;
                    let Some(&bottom) = index.get(&y.merge(&chosen)?) else {
                        continue;
                    };
                    let mut elements = vec![usize::MAX; 1 << q];
                    elements[0] = yi;
                    elements[full] = bottom;
                    let mut complete = true;
                    for mask in 1..full {
                        let sel: Vec<Vec<u32>> = (0..q)
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| chosen[i].clone())
                            .collect();
                        match index.get(&y.merge(&sel)?) {
                            Some(&e) => elements[mask] = e,
                            None => {
                                complete = false;
                                break;
                            }
                        }
                    }
                    if complete {
                        layers.entry(q).or_default().push(CubeInterval {
                            bottom,
                            top: yi,
                            elements,
                            directions: fam.iter().map(|i| keys[*i].clone()).collect(),
                        });
                    }
                }
            }
        }
        let mut cubes: Vec<Vec<CubeInterval>> = layers.into_values().collect();
        let mut cube_index = Vec::new();
        for layer in &mut cubes {
            layer.sort_by_key(|c| (c.bottom, c.top));
            cube_index.push(
                layer
                    .iter()
                    .enumerate()
                    .map(|(i, c)| ((c.bottom, c.top), i))
                    .collect::<HashMap<_, _>>(),
            );
        }
        let mut cells = Vec::new();
        for (q, layer) in cubes.iter().enumerate() {
            let mut out = Vec::with_capacity(layer.len());
            for c in layer {
                let e = &c.elements;
                let full = e.len() - 1;
                let faces = (0..q)
                    .map(|i| {
                        let lower = (e[full], e[1 << i]);
                        let upper = (e[full ^ (1 << i)], e[0]);
                        (cube_index[q - 1][&lower], cube_index[q - 1][&upper])
                    })
                    .collect();
                out.push(Cube { faces });
            }
            cells.push(out);
        }
        let cubical = CubicalComplex::new(cells)?;
        Ok(Truncation {
            d,
            r,
            s,
            vertices,
            index,
            cubes,
            cube_index,
            cubical,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn max_height(&self) -> u32 {
        self.s
    }

    /// Sorted; the base vertex is index 0.
    pub fn vertices(&self) -> &[SfVertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &SfVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn cubes(&self, q: usize) -> &[CubeInterval] {
        self.cubes.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn cube_index(&self, q: usize, bottom: usize, top: usize) -> Option<usize> {
        self.cube_index.get(q)?.get(&(bottom, top)).copied()
    }

    pub fn cubical(&self) -> &CubicalComplex {
        &self.cubical
    }

    pub fn cube_counts(&self) -> Vec<usize> {
        self.cubical.counts()
    }

    pub fn vertices_by_height(&self) -> Vec<usize> {
        let mut out = vec![0; self.s as usize + 1];
        for v in &self.vertices {
            out[v.height() as usize] += 1;
        }
        out
    }

    pub fn homology(&self) -> HomologyProfile {
        cubical_homology(&self.cubical)
    }

    /// Kept vertices `z` with `bottom ⪯ z ⪯ top`, found by testing every
    /// vertex against the order relation.
    pub fn interval_members(&self, bottom: usize, top: usize) -> Vec<usize> {
        let (x, y) = (&self.vertices[bottom], &self.vertices[top]);
        (0..self.vertices.len())
            .filter(|z| {
                let v = &self.vertices[*z];
                v.height() >= x.height() && v.height() <= y.height() && x.precedes(v) && v.precedes(y)
            })
            .collect()
    }

    /// Checks every cube: the interval has `2^dim` members, they are the
    /// recorded elements, and exactly one has maximal height.
    pub fn check_intervals(&self) -> IntervalCheck {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (q, layer) in self.cubes.iter().enumerate() {
            for (i, c) in layer.iter().enumerate() {
                checked += 1;
                let members = self.interval_members(c.bottom, c.top);
                let mut recorded = c.elements.clone();
                recorded.sort_unstable();
                let top_h = members.iter().map(|z| self.vertices[*z].height()).max();
                let tops = members
                    .iter()
                    .filter(|z| Some(self.vertices[**z].height()) == top_h)
                    .count();
                if members.len() != 1 << q || members != recorded || tops != 1 {
                    failures.push((q, i));
                }
            }
        }
        IntervalCheck { cubes_checked: checked, failures }
    }

    /// Orbits of the subgroup generated by `gens`, restricted to the kept
    /// cells: two cells are identified when a generator carries one onto the
    /// other inside the truncation.
    pub fn orbit_census(&self, gens: &[TreePair]) -> Result<OrbitCensus> {
        check_params(self.d, self.r, gens)?;
        let mut vuf = UnionFind::new(self.vertices.len());
        let mut image: Vec<Vec<Option<usize>>> = Vec::new();
        for g in gens {
            let mut img = Vec::with_capacity(self.vertices.len());
            for (i, v) in self.vertices.iter().enumerate() {
                let w = self.vertex_index(&v.act(g)?);
                if let Some(j) = w {
                    vuf.union(i, j);
                }
                img.push(w);
            }
            image.push(img);
        }
        let mut vertex_orbits = vec![0; self.s as usize + 1];
        for i in 0..self.vertices.len() {
            if vuf.find(i) == i {
                vertex_orbits[self.vertices[i].height() as usize] += 1;
            }
        }
        let mut cube_orbits = Vec::new();
        for (q, layer) in self.cubes.iter().enumerate() {
            let mut uf = UnionFind::new(layer.len());
            for img in &image {
                for (i, c) in layer.iter().enumerate() {
                    if let (Some(b), Some(t)) = (img[c.bottom], img[c.top]) {
                        if let Some(j) = self.cube_index(q, b, t) {
                            uf.union(i, j);
                        }
                    }
                }
            }
            cube_orbits.push((0..layer.len()).filter(|i| uf.find(*i) == *i).count());
        }
        Ok(OrbitCensus {
            vertices_by_height: self.vertices_by_height(),
            vertex_orbits_by_height: vertex_orbits,
            cubes_by_dim: self.cube_counts(),
            cube_orbits_by_dim: cube_orbits,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalCheck {
    pub cubes_checked: usize,
    /// `(dimension, index)` of each failing cube.
    pub failures: Vec<(usize, usize)>,
}

impl IntervalCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub vertices_by_height: Vec<usize>,
    pub vertex_orbits_by_height: Vec<usize>,
    pub cubes_by_dim: Vec<usize>,
    pub cube_orbits_by_dim: Vec<usize>,
}

/// Orbit of `v` under the group generated by `gens`, capped at `max`.
pub fn orbit(v: &SfVertex, gens: &[TreePair], max: usize) -> Result<Vec<SfVertex>> {
    check_params(v.d(), v.r(), gens)?;
    let moves: Vec<TreePair> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen = vec![v.clone()];
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in &moves {
            let y = x.act(g)?;
            if !seen.contains(&y) {
                if seen.len() == max {
                    return Err(Error::BudgetExceeded(max));
                }
                seen.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen.sort();
    Ok(seen)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

#[cfg(test)]
mod tests;
