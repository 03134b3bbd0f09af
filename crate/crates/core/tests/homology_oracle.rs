//! Cross-checks integer homology against ranks of boundary matrices over
//! prime fields, computed here from scratch. For each prime p,
//! dim H_k(X; F_p) = b_k + t_k(p) + t_{k-1}(p), where t_k(p) counts torsion
//! coefficients in degree k divisible by p.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topokit::complex::{Simplex, SimplicialComplex};
use topokit::homology::{homology, homology_unreduced, HomologyProfile};
use topokit::random::random_complex;

const PRIMES: [u64; 4] = [2, 3, 5, 1_000_003];

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + p * p - f * rows[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Unreduced mod-p Betti numbers, degrees 0..=dim.
fn betti_mod_p(x: &SimplicialComplex, p: u64) -> Vec<usize> {
    let dim = x.dim();
    if dim < 0 {
        return vec![];
    }
    let cells: Vec<Vec<Simplex>> = (0..=dim).map(|k| x.simplices_of_dim(k)).collect();
    let index: Vec<BTreeMap<&Simplex, usize>> =
        cells.iter().map(|c| c.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    // rank of d_k : C_k -> C_{k-1}, k >= 1
    let mut ranks = vec![0usize; dim as usize + 2];
    for k in 1..=dim as usize {
        let mut m = vec![vec![0u64; cells[k].len()]; cells[k - 1].len()];
        for (j, s) in cells[k].iter().enumerate() {
            let vs = s.vertices();
            for i in 0..vs.len() {
                let face = Simplex::new(vs.iter().enumerate().filter(|(t, _)| *t != i).map(|(_, v)| *v));
                let sign = if i % 2 == 0 { 1 } else { p - 1 };
                m[index[k - 1][&face]][j] = sign;
            }
        }
        ranks[k] = rank_mod_p(m, p);
    }
    (0..=dim as usize).map(|k| cells[k].len() - ranks[k] - ranks[k + 1]).collect()
}

fn torsion_count(h: &HomologyProfile, k: usize, p: u64) -> usize {
    h.torsion(k).iter().filter(|t| t.to_u64().unwrap() % p == 0).count()
}

fn agrees(x: &SimplicialComplex) -> Result<(), String> {
    let h = homology_unreduced(x);
    for p in PRIMES {
        let fp = betti_mod_p(x, p);
        for (k, &b) in fp.iter().enumerate() {
            let expect = h.betti(k) + torsion_count(&h, k, p) + if k > 0 { torsion_count(&h, k - 1, p) } else { 0 };
            if b != expect {
                return Err(format!("degree {k} mod {p}: field {b}, integral predicts {expect}"));
            }
        }
    }
    Ok(())
}

fn rp2() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ])
}

fn torus7() -> SimplicialComplex {
    let mut f = Vec::new();
    for i in 0..7u32 {
        f.push([i, (i + 1) % 7, (i + 3) % 7]);
        f.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::from_facets(f)
}

fn summary(h: &HomologyProfile) -> Vec<(usize, Vec<u64>)> {
    h.degrees.iter().map(|d| (d.betti, d.torsion.iter().map(|t| t.to_u64().unwrap()).collect())).collect()
}

#[test]
fn sphere_boundaries() {
    for n in 1..=3u32 {
        let x = SimplicialComplex::simplex_boundary(0..n + 2);
        let h = homology(&x);
        for k in 0..=n as usize {
            let b = if k == n as usize { 1 } else { 0 };
            assert_eq!(h.betti(k), b, "n={n} k={k}");
            assert!(h.torsion(k).is_empty());
        }
        agrees(&x).unwrap();
    }
}

#[test]
fn projective_plane() {
    let x = rp2();
    assert_eq!(x.f_vector(), vec![6, 15, 10]);
    assert_eq!(summary(&homology_unreduced(&x)), vec![(1, vec![]), (0, vec![2]), (0, vec![])]);
    agrees(&x).unwrap();
}

#[test]
fn torus() {
    let x = torus7();
    assert_eq!(x.f_vector(), vec![7, 21, 14]);
    assert_eq!(summary(&homology_unreduced(&x)), vec![(1, vec![]), (2, vec![]), (1, vec![])]);
    agrees(&x).unwrap();
}

#[test]
fn reduced_and_unreduced_differ_in_degree_zero() {
    let x = SimplicialComplex::from_facets([[1], [2], [3]]);
    assert_eq!(homology(&x).betti(0), 2);
    assert_eq!(homology_unreduced(&x).betti(0), 3);
    assert!(homology(&SimplicialComplex::full_simplex([1, 2, 3])).is_trivial());
}

#[test]
fn seeded_random_battery() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..60 {
        let x = random_complex(&mut rng, 8, 3, 7);
        agrees(&x).unwrap();
        assert_eq!(homology_unreduced(&x).euler_characteristic(), x.euler_characteristic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_ranks_match(seed in any::<u64>(), n in 3u32..8, dim in 1usize..4, facets in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, n, dim, facets);
        prop_assert_eq!(agrees(&x), Ok(()));
    }

    #[test]
    fn barycentric_subdivision_preserves_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, 5, 2, 4);
        let sd = x.barycentric().unwrap();
        prop_assert!(homology(&x).same_groups(&homology(&sd)));
    }

    #[test]
    fn cones_are_acyclic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, 6, 2, 5);
        prop_assert!(homology(&x.cone(100).unwrap()).is_trivial());
    }
}
