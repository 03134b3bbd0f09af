//! Abstract cubical complexes and their homology.
//!
//! A `q`-cube records, for each of its `q` directions, the indices of its
//! lower and upper facets among the `(q-1)`-cubes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::homology::{chain_homology, HomologyProfile};
use crate::linalg::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    /// `(lower, upper)` facet indices, one pair per direction.
    pub faces: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubicalComplex {
    cells: Vec<Vec<Cube>>,
}

impl CubicalComplex {
    /// Validates face indices, face counts and `∂∂ = 0`.
    pub fn new(cells: Vec<Vec<Cube>>) -> Result<Self> {
        for (q, layer) in cells.iter().enumerate() {
            for (i, c) in layer.iter().enumerate() {
                if c.faces.len() != q {
                    return Err(Error::MalformedCubicalComplex(format!(
                        "cube {i} of dimension {q} has {} directions",
                        c.faces.len()
                    )));
                }
                let below = if q == 0 { 0 } else { cells[q - 1].len() };
                if c.faces.iter().any(|(a, b)| *a >= below || *b >= below || a == b) {
                    return Err(Error::MalformedCubicalComplex(format!(
                        "cube {i} of dimension {q} has an invalid face index"
                    )));
                }
            }
        }
        let cx = CubicalComplex { cells };
        for q in 2..cx.cells.len() {
            if !cx.boundary(q - 1).mul_sparse(&cx.boundary(q)).is_zero() {
                return Err(Error::MalformedCubicalComplex(format!(
                    "boundary of boundary is nonzero in degree {q}"
                )));
            }
        }
        Ok(cx)
    }

    /// The complex generated by elementary cubes of `Z^n`. Each cube is a list
    /// of `(start, extent)` intervals with extent 0 or 1.
    pub fn from_elementary(maximal: &[Vec<(i64, u8)>]) -> Result<Self> {
        type Elem = Vec<(i64, u8)>;
        let mut all: BTreeMap<usize, std::collections::BTreeSet<Elem>> = BTreeMap::new();
        fn close(c: &Elem, all: &mut BTreeMap<usize, std::collections::BTreeSet<Elem>>) {
            let q = c.iter().filter(|(_, e)| *e == 1).count();
            if !all.entry(q).or_default().insert(c.clone()) {
                return;
            }
            for i in 0..c.len() {
                if c[i].1 == 1 {
                    for shift in 0..2 {
                        let mut f = c.clone();
                        f[i] = (c[i].0 + shift, 0);
                        close(&f, all);
                    }
                }
            }
        }
        let n = maximal.first().map_or(0, Vec::len);
        for c in maximal {
            if c.len() != n || c.iter().any(|(_, e)| *e > 1) {
                return Err(Error::MalformedCubicalComplex("bad elementary cube".into()));
            }
            close(c, &mut all);
        }
        let top = all.keys().max().copied().map_or(0, |q| q + 1);
        let layers: Vec<Vec<Elem>> = (0..top)
            .map(|q| all.get(&q).map(|s| s.iter().cloned().collect()).unwrap_or_default())
            .collect();
        let mut cells = Vec::new();
        for (q, layer) in layers.iter().enumerate() {
            let mut out = Vec::new();
            for c in layer {
                let mut faces = Vec::new();
                for i in 0..c.len() {
                    if c[i].1 == 1 {
                        let mut lo = c.clone();
                        lo[i] = (c[i].0, 0);
                        let mut hi = c.clone();
                        hi[i] = (c[i].0 + 1, 0);
                        let find = |f: &Elem| layers[q - 1].binary_search(f).unwrap();
                        faces.push((find(&lo), find(&hi)));
                    }
                }
                out.push(Cube { faces });
            }
            cells.push(out);
        }
        Self::new(cells)
    }

    /// Boundary of the standard `q`-cube, `q >= 1`.
    pub fn cube_boundary(q: usize) -> Result<Self> {
        let full: Vec<(i64, u8)> = vec![(0, 1); q];
        let full_cx = Self::from_elementary(&[full])?;
        let mut cells = full_cx.cells;
        cells.pop();
        Self::new(cells)
    }

    pub fn dim(&self) -> i32 {
        self.cells.len() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.cells.first().is_none_or(Vec::is_empty)
    }

    pub fn cells(&self, q: usize) -> &[Cube] {
        self.cells.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// `∂Q = Σ_i (-1)^i (A_i - B_i)`, lower face `A_i`, upper face `B_i`.
    pub fn boundary(&self, q: usize) -> SparseMatrix {
        let cols = self.cells(q);
        if q == 0 {
            return SparseMatrix::new(0, cols.len());
        }
        let mut m = SparseMatrix::new(self.cells(q - 1).len(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, (a, b)) in c.faces.iter().enumerate() {
                let s = if i % 2 == 0 { 1 } else { -1 };
                m.push(*a, j, s);
                m.push(*b, j, -s);
            }
        }
        m
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(q, n)| if q % 2 == 0 { *n as i64 } else { -(*n as i64) })
            .sum()
    }
}

/// Reduced homology of a cubical complex.
pub fn cubical_homology(c: &CubicalComplex) -> HomologyProfile {
    let counts = c.counts();
    let boundaries: Vec<SparseMatrix> = (0..counts.len())
        .map(|q| {
            if q == 0 {
                let mut m = SparseMatrix::new(usize::from(counts[0] > 0), counts[0]);
                for j in 0..counts[0] {
                    m.push(0, j, 1);
                }
                m
            } else {
                c.boundary(q)
            }
        })
        .collect();
    chain_homology(&counts, &boundaries, true)
}
