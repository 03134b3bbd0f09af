use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topokit::complex::{Simplex, SimplicialComplex};
use topokit::flow::random_flow_data;
use topokit::homology::{boundary_matrix, hconn, homology};
use topokit::io::{parse_document, to_text, Document};
use topokit::random::{random_complex, random_subcomplex};
use topokit::thompson::random_element;
use topokit::toolkit::BadVertexAssignment;

fn complex(seed: u64, n: u32, dim: usize, facets: usize) -> SimplicialComplex {
    random_complex(&mut ChaCha8Rng::seed_from_u64(seed), n, dim, facets)
}

fn round_trip(doc: Document) -> Result<(), TestCaseError> {
    let text = to_text(&doc);
    let back = parse_document(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(to_text(&back), text);
    prop_assert_eq!(back, doc);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let x = complex(seed, 8, 4, 6);
        for k in 1..=x.dim() {
            let prod = boundary_matrix(&x, k - 1, true).mul_sparse(&boundary_matrix(&x, k, true));
            prop_assert!(prod.is_zero());
        }
        prop_assert_eq!(homology(&x).euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn links_and_stars_are_subcomplexes(seed in any::<u64>()) {
        let x = complex(seed, 7, 3, 5);
        for s in x.simplices_graded() {
            let lk = x.link(&s).unwrap();
            let st = x.star(&s).unwrap();
            prop_assert!(lk.is_subcomplex_of(&st) && st.is_subcomplex_of(&x));
            prop_assert!(lk.simplices().all(|t| !t.intersects(&s) && x.contains(&t.union(&s))));
            // the closed star is a cone, hence acyclic
            prop_assert!(homology(&st).is_trivial());
        }
    }

    #[test]
    fn suspension_shifts_homology(seed in any::<u64>()) {
        let x = complex(seed, 5, 2, 4);
        let sx = x.join(&SimplicialComplex::from_facets([[100], [101]])).unwrap();
        let (h, hs) = (homology(&x), homology(&sx));
        for k in 0..=x.dim().max(0) as usize {
            prop_assert_eq!(h.betti(k), hs.betti(k + 1));
            prop_assert_eq!(h.torsion(k), hs.torsion(k + 1));
        }
        prop_assert_eq!(hs.betti(0), 0);
    }

    #[test]
    fn xm_filtration(seed in any::<u64>()) {
        let x = complex(seed, 5, 2, 4);
        prop_assert_eq!(x.xm_subcomplex(0).unwrap(), x.barycentric().unwrap());
        let f = x.barycentric().unwrap().f_vector();
        prop_assert_eq!(f[0], x.num_simplices());
        let mut prev = x.xm_subcomplex(0).unwrap();
        for m in 1..=x.dim() + 1 {
            let xm = x.xm_subcomplex(m).unwrap();
            prop_assert!(xm.num_simplices() <= prev.num_simplices());
            prev = xm;
        }
    }

    #[test]
    fn skeleton_and_filter(seed in any::<u64>(), k in 0i32..3) {
        let x = complex(seed, 6, 3, 5);
        let sk = x.skeleton(k);
        prop_assert!(sk.dim() <= k && sk.is_subcomplex_of(&x));
        prop_assert_eq!(sk.f_vector(), x.f_vector().into_iter().take(k as usize + 1).collect::<Vec<_>>());
        let y = random_subcomplex(&mut ChaCha8Rng::seed_from_u64(seed ^ 1), &x, 0.5);
        prop_assert!(y.is_subcomplex_of(&x));
    }

    #[test]
    fn hconn_matches_homology(seed in any::<u64>()) {
        let x = complex(seed, 6, 2, 4);
        let h = hconn(&x);
        let prof = homology(&x);
        match prof.first_nonzero() {
            None => prop_assert_eq!(h, i32::MAX),
            Some(k) => prop_assert_eq!(h, k as i32 - 1),
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, 6, 2, 4);
        round_trip(Document::Complex(x.clone()))?;
        let bad: BTreeSet<u32> = x.vertices().into_iter().filter(|v| v % 2 == 0).collect();
        round_trip(Document::BadAssignment(BadVertexAssignment::from_vertex_subset(&x, &bad)))?;
        let f = random_flow_data(&mut rng, &x, 3);
        round_trip(Document::Flow(f))?;
        round_trip(Document::TreePair(random_element(&mut rng, 2, 2, 4)))?;
    }
}

#[test]
fn empty_complex_conventions() {
    let e = SimplicialComplex::empty();
    assert_eq!(e.dim(), -1);
    assert_eq!(hconn(&e), -2);
    assert!(e.xm_subcomplex(1).is_err());
    assert!(e.link(&Simplex::vertex(0)).is_err());
}
