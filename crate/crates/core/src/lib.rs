//! Combinatorial topology toolkit: simplicial complexes, exact homology,
//! connectivity certificates, discrete flows, colorings, Thompson groups and
//! Stein–Farley cube complexes.

pub mod cli;
pub mod coloring;
pub mod complex;
pub mod cubical;
pub mod error;
pub mod flow;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod pi1;
pub mod random;
pub mod stein_farley;
pub mod thompson;
pub mod toolkit;

pub use complex::{Simplex, SimplicialComplex, Vertex, VertexLabeling};
pub use error::{Error, Result};
