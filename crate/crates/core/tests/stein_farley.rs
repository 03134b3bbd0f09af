use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topokit::error::Error;
use topokit::stein_farley::{
    build_truncation, descending_link, nonempty_branches, orbit, SfVertex, Truncation, TruncationOptions,
};
use topokit::thompson::{random_element, standard, Forest, TreePair};

/// The vertex of the pair `(F, g)`.
fn vertex(f: &Forest, g: &TreePair) -> SfVertex {
    let psi = g.compose(&TreePair::from_forest(f)).unwrap();
    SfVertex::new(f.num_carets() as u32, &psi).unwrap()
}

fn forest(d: u32, s: &str) -> Forest {
    Forest::parse(d, s).unwrap()
}

fn opts() -> TruncationOptions {
    TruncationOptions::default()
}

fn unique_tops(t: &Truncation) -> bool {
    (0..=t.max_height() as usize).all(|q| {
        t.cubes(q).iter().all(|c| {
            let hs: Vec<u32> = c.elements.iter().map(|&i| t.vertices()[i].height()).collect();
            let top = *hs.iter().max().unwrap();
            hs.iter().filter(|&&h| h == top).count() == 1 && t.vertices()[c.top].height() == top
        })
    })
}

#[test]
fn lower_neighbours() {
    let base = SfVertex::base(2, 1);
    assert!(base.below().is_empty());
    let one = vertex(&forest(2, "(..)"), &TreePair::identity(2, 1));
    let below = one.below();
    assert_eq!(below.len(), 2);
    assert!(below.contains(&base));
    assert!(below.contains(&base.act(&standard::sigma()).unwrap()));
    let stacked = vertex(&forest(2, "((..).)"), &TreePair::identity(2, 1));
    assert_eq!(stacked.below().len(), 6);
}

#[test]
fn small_truncations() {
    let t = build_truncation(2, 1, 0, &[], opts()).unwrap();
    assert_eq!(t.vertices().len(), 1);
    let t = build_truncation(2, 1, 1, &[], opts()).unwrap();
    assert_eq!(t.cube_counts(), vec![2, 1]);
    let t = build_truncation(1, 3, 2, &[], opts()).unwrap();
    assert_eq!(t.vertices_by_height(), vec![1, 3, 6]);
    assert!(t.homology().is_trivial());
    assert_eq!(t.vertices()[0], SfVertex::base(1, 3));
}

#[test]
fn descending_links() {
    assert_eq!(descending_link(&SfVertex::base(2, 1)).dim(), -1);
    let v = vertex(&forest(1, "(.) (.) (.)"), &TreePair::identity(1, 3));
    let l = descending_link(&v);
    assert_eq!(l.dim(), 2);
    assert_eq!(l.complex.num_facets(), 1);
    // with 3 copies no two ordered pairs are disjoint
    let stacked = vertex(&forest(2, "((..).)"), &TreePair::identity(2, 1));
    let l = descending_link(&stacked);
    assert_eq!((l.dim(), l.complex.num_vertices()), (0, 6));
}

#[test]
fn d1_vertices_forget_branch_placement() {
    let id = TreePair::identity(1, 3);
    let stacked = vertex(&forest(1, "((.)) . ."), &id);
    let spread = vertex(&forest(1, "(.) (.) ."), &id);
    assert_ne!(stacked, spread);
    // the stacked pair is also represented on the spread forest
    let (f, g) = stacked.representative();
    assert_eq!(f, forest(1, "(.) (.) ."));
    assert_eq!(vertex(&f, &g), stacked);
    assert_eq!(nonempty_branches(&f), 2);
    assert_eq!(descending_link(&stacked).dim(), 1);
    assert_eq!(descending_link(&spread).dim(), 1);
}

#[test]
fn actions_and_orbits() {
    let base = SfVertex::base(2, 1);
    assert_eq!(base.act(&TreePair::identity(2, 1)).unwrap(), base);
    let o = orbit(&base, &[standard::sigma()], 100).unwrap();
    assert_eq!(o.len(), 2);
    assert!(matches!(base.act(&TreePair::identity(2, 2)), Err(Error::ParameterMismatch(_))));
}

#[test]
fn census() {
    let t = build_truncation(2, 1, 2, &[], opts()).unwrap();
    let c = t.orbit_census(&[]).unwrap();
    assert_eq!(c.vertex_orbits_by_height, c.vertices_by_height);
    let single = build_truncation(2, 1, 0, &[], opts()).unwrap();
    assert_eq!(single.orbit_census(&[standard::sigma()]).unwrap().vertex_orbits_by_height, vec![1]);

    let gens: Vec<TreePair> =
        standard::all().into_iter().map(|(_, g)| g).filter(|g| g.domain().num_carets() <= 2).collect();
    let t = build_truncation(2, 1, 2, &gens, opts()).unwrap();
    let c = t.orbit_census(&gens).unwrap();
    for (o, n) in c.vertex_orbits_by_height.iter().zip(&c.vertices_by_height) {
        assert!(*o >= 1 && o <= n);
    }
}

#[test]
fn intervals_and_tops() {
    let gens: Vec<TreePair> = standard::all().into_iter().map(|(_, g)| g).collect();
    for (d, r, s, g) in [(2, 1, 2, &gens[..]), (2, 1, 3, &[][..]), (1, 3, 3, &[][..]), (3, 1, 2, &[][..]), (2, 2, 2, &[][..])] {
        let t = build_truncation(d, r, s, g, opts()).unwrap();
        assert!(t.vertices().len() <= 500);
        let check = t.check_intervals();
        assert!(check.passed(), "d={d} r={r} s={s}: {:?}", check.failures);
        assert!(unique_tops(&t));
    }
}

#[test]
fn cap_is_enforced() {
    let o = TruncationOptions {
        max_vertices: 5,
        gen_rounds: 1,
    };
    assert!(matches!(build_truncation(2, 1, 4, &[], o), Err(Error::BudgetExceeded(5))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_preserves_height(seed in any::<u64>(), d in 1u32..=3, r in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = topokit::thompson::random_forest(&mut rng, d, r, 3);
        let v = vertex(&f, &random_element(&mut rng, d, r, 4));
        let g = random_element(&mut rng, d, r, 4);
        let w = v.act(&g).unwrap();
        prop_assert_eq!(w.height(), v.height());
        prop_assert_eq!(w.act(&g.inverse()).unwrap(), v.clone());
        let (rf, _) = v.representative();
        prop_assert_eq!(rf.leaf_count() as u32, r + v.height() * (d - 1));
        for u in v.above() {
            prop_assert!(v.precedes(&u));
        }
        for u in v.below() {
            prop_assert!(u.precedes(&v));
        }
    }
}
