//! Integer simplicial homology, homological connectivity and the
//! weakly Cohen-Macaulay check.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::Result;
use crate::linalg::{invariant_factors, smith, IntMatrix, SparseMatrix};
use crate::maps::{oriented_image, SimplicialMap};
use crate::pi1::{pi1_certificate, Pi1Certificate};

/// Connectivity value of a nonempty complex with no reduced homology.
pub const HCONN_INF: i32 = i32::MAX;

/// Homology in one degree: `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for DegreeHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology groups in degrees `0..len`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyProfile {
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn degree(&self, k: usize) -> DegreeHomology {
        self.degrees.get(k).cloned().unwrap_or_default()
    }

    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn torsion(&self, k: usize) -> Vec<BigInt> {
        self.degrees.get(k).map_or_else(Vec::new, |d| d.torsion.clone())
    }

    /// All groups vanish.
    pub fn is_trivial(&self) -> bool {
        self.degrees.iter().all(DegreeHomology::is_zero)
    }

    /// First degree with nonzero homology.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.degrees.iter().position(|d| !d.is_zero())
    }

    /// Equal groups in every degree, ignoring trailing zero degrees.
    pub fn same_groups(&self, other: &HomologyProfile) -> bool {
        let n = self.degrees.len().max(other.degrees.len());
        (0..n).all(|k| self.degree(k) == other.degree(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        let chi: i64 = self
            .degrees
            .iter()
            .enumerate()
            .map(|(k, d)| if k % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) })
            .sum();
        if self.reduced {
            chi + 1
        } else {
            chi
        }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.reduced { "H~" } else { "H" };
        for (k, d) in self.degrees.iter().enumerate() {
            writeln!(f, "{h}_{k} = {d}")?;
        }
        Ok(())
    }
}

fn index_of(simplices: &[Simplex], s: &Simplex) -> usize {
    simplices.binary_search(s).expect("face of a simplex in the complex")
}

/// Boundary matrix of degree `k`: rows are `(k-1)`-simplices, columns are
/// `k`-simplices, both in sorted order. With `augmented`, `∂_0` is the
/// augmentation row of ones.
pub fn boundary_matrix(x: &SimplicialComplex, k: i32, augmented: bool) -> SparseMatrix {
    let cols = x.simplices_of_dim(k);
    if k == 0 {
        let mut m = SparseMatrix::new(usize::from(augmented && !x.is_empty()), cols.len());
        if augmented && !x.is_empty() {
            for j in 0..cols.len() {
                m.push(0, j, 1);
            }
        }
        return m;
    }
    let rows = x.simplices_of_dim(k - 1);
    let mut m = SparseMatrix::new(rows.len(), cols.len());
    if k < 0 {
        return m;
    }
    for (j, s) in cols.iter().enumerate() {
        for (i, face) in s.boundary_faces().iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.push(index_of(&rows, face), j, sign);
        }
    }
    m
}

/// Homology of a chain complex given by cell counts `n_0..n_D` and boundary
/// matrices `∂_0..∂_D` (`∂_0` may be the augmentation or an empty matrix).
pub fn chain_homology(counts: &[usize], boundaries: &[SparseMatrix], reduced: bool) -> HomologyProfile {
    let ranks: Vec<usize> = boundaries.iter().map(|b| invariant_factors(b).len()).collect();
    let factors: Vec<Vec<BigInt>> = boundaries.iter().map(invariant_factors).collect();
    let degrees = (0..counts.len())
        .map(|k| {
            let out_rank = ranks.get(k).copied().unwrap_or(0);
            let in_rank = ranks.get(k + 1).copied().unwrap_or(0);
            let torsion = factors
                .get(k + 1)
                .map(|f| f.iter().filter(|d| !d.is_one()).cloned().collect())
                .unwrap_or_default();
            DegreeHomology {
                betti: counts[k] - out_rank - in_rank,
                torsion,
            }
        })
        .collect();
    HomologyProfile { reduced, degrees }
}

fn simplicial_homology(x: &SimplicialComplex, reduced: bool) -> HomologyProfile {
    let dim = x.dim();
    if dim < 0 {
        return HomologyProfile {
            reduced,
            degrees: Vec::new(),
        };
    }
    let counts: Vec<usize> = (0..=dim).map(|k| x.simplices_of_dim(k).len()).collect();
    let boundaries: Vec<SparseMatrix> = (0..=dim).map(|k| boundary_matrix(x, k, reduced)).collect();
    chain_homology(&counts, &boundaries, reduced)
}

/// Reduced integer homology in degrees `0..=dim X`.
pub fn homology(x: &SimplicialComplex) -> HomologyProfile {
    simplicial_homology(x, true)
}

pub fn homology_unreduced(x: &SimplicialComplex) -> HomologyProfile {
    simplicial_homology(x, false)
}

/// Largest `k` with vanishing reduced homology through degree `k`:
/// `-2` when empty, `-1` when disconnected, [`HCONN_INF`] when acyclic.
pub fn hconn(x: &SimplicialComplex) -> i32 {
    if x.is_empty() {
        return -2;
    }
    hconn_of_profile(&homology(x))
}

pub fn hconn_of_profile(h: &HomologyProfile) -> i32 {
    match h.first_nonzero() {
        Some(k) => k as i32 - 1,
        None => HCONN_INF,
    }
}

pub fn format_hconn(h: i32) -> String {
    if h == HCONN_INF {
        "inf".to_string()
    } else {
        h.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub hconn: i32,
    pub pi1_trivial: Pi1Certificate,
}

pub fn hconnectivity(x: &SimplicialComplex) -> ConnectivityReport {
    ConnectivityReport {
        hconn: hconn(x),
        pi1_trivial: pi1_certificate(x),
    }
}

/// Why a wCM check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WcmWitness {
    /// The complex itself is not `(n-1)`-connected.
    Global { hconn: i32 },
    /// The link of this simplex is not `(n - dim - 2)`-connected.
    Link { simplex: Simplex, hconn: i32 },
}

impl fmt::Display for WcmWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WcmWitness::Global { hconn } => {
                write!(f, "global connectivity {}", format_hconn(*hconn))
            }
            WcmWitness::Link { simplex, hconn } => {
                write!(f, "link of {simplex} has connectivity {}", format_hconn(*hconn))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WcmResult {
    pub holds: bool,
    pub witness: Option<WcmWitness>,
}

/// Homological weakly Cohen-Macaulay test of dimension `n`.
pub fn wcm_check(x: &SimplicialComplex, n: i32) -> WcmResult {
    let global = hconn(x);
    if global < n - 1 {
        return WcmResult {
            holds: false,
            witness: Some(WcmWitness::Global { hconn: global }),
        };
    }
    let mut cache: BTreeMap<Vec<Simplex>, i32> = BTreeMap::new();
    for s in x.simplices_graded() {
        let need = n - s.dim() - 2;
        if need < -1 {
            continue;
        }
        let lk = x.link(&s).expect("simplex of the complex");
        let key: Vec<Simplex> = lk.facets().cloned().collect();
        let h = *cache.entry(key).or_insert_with(|| hconn(&lk));
        if h < need {
            return WcmResult {
                holds: false,
                witness: Some(WcmWitness::Link { simplex: s, hconn: h }),
            };
        }
    }
    WcmResult {
        holds: true,
        witness: None,
    }
}

/// Chain map of `f` in degree `k` as a matrix `C_k(target) × C_k(source)`.
fn chain_map_matrix(f: &SimplicialMap, k: i32) -> IntMatrix {
    let src = f.source().simplices_of_dim(k);
    let tgt = f.target().simplices_of_dim(k);
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (j, s) in src.iter().enumerate() {
        if let Some((img, sign)) = oriented_image(f, s) {
            m.set(index_of(&tgt, &img), j, BigInt::from(sign));
        }
    }
    m
}

/// Presentation of `H̃_d` as `Z^z / im R`, `z` the rank of the cycle group.
struct CyclePresentation {
    /// Cycle basis as columns in the chain group.
    cycles: IntMatrix,
    /// Boundaries in cycle coordinates.
    relations: IntMatrix,
}

fn presentation(x: &SimplicialComplex, d: i32) -> CyclePresentation {
    let bd = boundary_matrix(x, d, true).to_dense();
    let n = x.simplices_of_dim(d).len();
    let cycles = if bd.rows() == 0 {
        IntMatrix::identity(n)
    } else {
        smith(&bd).kernel_basis()
    };
    let up = boundary_matrix(x, d + 1, true).to_dense();
    let cs = smith(&cycles);
    let rel_cols: Vec<Vec<BigInt>> = up
        .columns()
        .iter()
        .map(|b| cs.solve(b).expect("boundaries are cycles"))
        .collect();
    let relations = IntMatrix::from_columns(cycles.cols(), &rel_cols);
    CyclePresentation { cycles, relations }
}

/// Induced homomorphism on reduced homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    pub source: DegreeHomology,
    pub target: DegreeHomology,
    /// Columns: images of the source generators (free first, then torsion,
    /// in Smith order), in target generator coordinates. Torsion coordinates
    /// are reduced modulo their order.
    pub matrix: IntMatrix,
    pub injective: bool,
    pub surjective: bool,
}

impl InducedMap {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn classification(&self) -> &'static str {
        match (self.injective, self.surjective) {
            (true, true) => "isomorphism",
            (false, true) => "surjection",
            (true, false) => "injection",
            (false, false) => "neither",
        }
    }
}

/// Generators of `Z^z / im R` as indices into Smith coordinates, with the
/// order of each (zero for free).
struct Generators {
    smith_u: IntMatrix,
    smith_u_inv: IntMatrix,
    gens: Vec<(usize, BigInt)>,
}

fn generators(p: &CyclePresentation) -> Generators {
    let z = p.cycles.cols();
    let s = smith(&p.relations);
    let mut torsion = Vec::new();
    for (i, d) in s.diag.iter().enumerate() {
        if !d.is_one() {
            torsion.push((i, d.clone()));
        }
    }
    let mut gens: Vec<(usize, BigInt)> = (s.rank()..z).map(|i| (i, BigInt::zero())).collect();
    gens.extend(torsion);
    Generators {
        smith_u: s.u,
        smith_u_inv: s.u_inv,
        gens,
    }
}

fn degree_of(g: &Generators) -> DegreeHomology {
    DegreeHomology {
        betti: g.gens.iter().filter(|(_, o)| o.is_zero()).count(),
        torsion: g.gens.iter().filter(|(_, o)| !o.is_zero()).map(|(_, o)| o.clone()).collect(),
    }
}

/// The homomorphism `f_*: H̃_d(source) → H̃_d(target)`.
pub fn induced_map_homology(f: &SimplicialMap, degree: usize) -> Result<InducedMap> {
    let d = degree as i32;
    let pa = presentation(f.source(), d);
    let pb = presentation(f.target(), d);
    let fd = chain_map_matrix(f, d);

    // f applied to source cycles, in target cycle coordinates
    let imgs = fd.mul(&pa.cycles);
    let sb = smith(&pb.cycles);
    let m_cols: Vec<Vec<BigInt>> = imgs
        .columns()
        .iter()
        .map(|c| sb.solve(c).expect("chain maps send cycles to cycles"))
        .collect();
    let m = IntMatrix::from_columns(pb.cycles.cols(), &m_cols);
    let za = pa.cycles.cols();
    let zb = pb.cycles.cols();

    let n = m.hcat(&pb.relations);
    let sn = smith(&n);
    let surjective = sn.rank() == zb && sn.diag.iter().all(One::is_one);

    let injective = {
        let ker = sn.kernel_basis();
        let sa = smith(&pa.relations);
        (0..ker.cols()).all(|j| {
            let c: Vec<BigInt> = ker.column(j)[..za].to_vec();
            sa.solve(&c).is_some()
        })
    };

    let ga = generators(&pa);
    let gb = generators(&pb);
    let mut cols = Vec::new();
    for (i, _) in &ga.gens {
        let x = ga.smith_u_inv.column(*i);
        let y = gb.smith_u.mul_vec(&m.mul_vec(&x));
        let col: Vec<BigInt> = gb
            .gens
            .iter()
            .map(|(k, order)| {
                if order.is_zero() {
                    y[*k].clone()
                } else {
                    num_integer::Integer::mod_floor(&y[*k], order)
                }
            })
            .collect();
        cols.push(col);
    }
    Ok(InducedMap {
        degree,
        source: degree_of(&ga),
        target: degree_of(&gb),
        matrix: IntMatrix::from_columns(gb.gens.len(), &cols),
        injective,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_squares_to_zero() {
        let x = SimplicialComplex::full_simplex([0, 1, 2, 3]);
        for k in 1..=3 {
            let a = boundary_matrix(&x, k - 1, true).to_dense();
            let b = boundary_matrix(&x, k, true).to_dense();
            assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn sphere_and_points() {
        let s2 = SimplicialComplex::simplex_boundary([0, 1, 2, 3]);
        let h = homology(&s2);
        assert_eq!(h.betti_numbers(), vec![0, 0, 1]);
        assert_eq!(homology_unreduced(&s2).betti_numbers(), vec![1, 0, 1]);
        assert_eq!(hconn(&s2), 1);
        let two = SimplicialComplex::from_facets([[0], [1]]);
        assert_eq!(hconn(&two), -1);
        assert_eq!(hconn(&SimplicialComplex::empty()), -2);
        assert_eq!(hconn(&SimplicialComplex::full_simplex([0, 1])), HCONN_INF);
    }

    #[test]
    fn wcm_examples() {
        let s2 = SimplicialComplex::simplex_boundary([0, 1, 2, 3]);
        assert!(wcm_check(&s2, 2).holds);
        let tris = SimplicialComplex::from_facets([[0, 1, 2], [3, 4, 5]]);
        let r = wcm_check(&tris, 1);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(WcmWitness::Global { hconn: -1 }));
        let edge = SimplicialComplex::from_facets([[0, 1]]);
        let r = wcm_check(&edge, 2);
        assert!(!r.holds);
        assert!(matches!(r.witness, Some(WcmWitness::Link { ref simplex, .. }) if simplex.len() == 2));
    }

    #[test]
    fn induced_inclusions() {
        let tri = SimplicialComplex::full_simplex([0, 1, 2]);
        let circle = SimplicialComplex::simplex_boundary([0, 1, 2]);
        let f = SimplicialMap::inclusion(&circle, &tri).unwrap();
        let m = induced_map_homology(&f, 1).unwrap();
        assert!(!m.injective && m.surjective);
        assert_eq!(m.source.betti, 1);
        let e = SimplicialComplex::full_simplex([0, 1]);
        let g = SimplicialMap::inclusion(&e, &tri).unwrap();
        for d in 0..3 {
            assert!(induced_map_homology(&g, d).unwrap().is_isomorphism());
        }
    }

    #[test]
    fn degree_two_self_map_of_circle() {
        // hexagon wrapped twice around a triangle
        let hex = SimplicialComplex::from_facets([[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]]);
        let tri = SimplicialComplex::simplex_boundary([10, 11, 12]);
        let vm = (0..6).map(|i| (i, 10 + i % 3)).collect();
        let f = SimplicialMap::new(hex, tri, vm).unwrap();
        let m = induced_map_homology(&f, 1).unwrap();
        assert!(m.injective && !m.surjective);
        assert_eq!(m.matrix.get(0, 0).magnitude().to_string(), "2");
    }
}
