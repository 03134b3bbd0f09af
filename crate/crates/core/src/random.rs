//! Seeded generators for random test instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{Simplex, SimplicialComplex, Vertex};

/// A random complex on vertices `0..n` with facets of dimension at most
/// `max_dim`. Every vertex is present.
pub fn random_complex<R: Rng>(rng: &mut R, n: u32, max_dim: usize, facets: usize) -> SimplicialComplex {
    let verts: Vec<Vertex> = (0..n).collect();
    let mut out: Vec<Simplex> = verts.iter().map(|v| Simplex::vertex(*v)).collect();
    for _ in 0..facets {
        let size = rng.gen_range(1..=(max_dim + 1).min(n as usize).max(1));
        let pick: Vec<Vertex> = verts.choose_multiple(rng, size).copied().collect();
        out.push(Simplex::new(pick));
    }
    SimplicialComplex::new(out)
}

/// A random subcomplex: each facet kept with probability `p`, then closed.
pub fn random_subcomplex<R: Rng>(rng: &mut R, x: &SimplicialComplex, p: f64) -> SimplicialComplex {
    let mut keep = Vec::new();
    for f in x.facets() {
        if rng.gen_bool(p) {
            keep.push(f.clone());
        } else if f.len() > 1 && rng.gen_bool(0.5) {
            // keep a random facet of it instead
            let faces = f.boundary_faces();
            keep.push(faces[rng.gen_range(0..faces.len())].clone());
        }
    }
    SimplicialComplex::new(keep)
}
