use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topokit::error::Error;
use topokit::thompson::{random_address, random_element, standard, Address, Forest, TreePair};

/// Every address of length `depth` on `r` roots.
fn all_addresses(d: u32, r: u32, depth: usize) -> Vec<Address> {
    let mut out = Vec::new();
    for root in 0..r {
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..depth {
            words = words
                .into_iter()
                .flat_map(|w| {
                    (0..d as u8).map(move |i| {
                        let mut w = w.clone();
                        w.push(i);
                        w
                    })
                })
                .collect();
        }
        out.extend(words.into_iter().map(|word| Address { root, word }));
    }
    out
}

/// Equal action on all addresses deep enough for both; deeper addresses
/// are then determined by prefix replacement.
fn same_action(g: &TreePair, h: &TreePair) -> bool {
    let depth = g.domain().depth().max(h.domain().depth());
    all_addresses(g.d(), g.source_roots(), depth)
        .iter()
        .all(|a| g.act(a).unwrap() == h.act(a).unwrap())
}

fn sigma() -> TreePair {
    standard::sigma()
}

#[test]
fn sigma_examples() {
    let s = sigma();
    let id = TreePair::identity(2, 1);
    assert_eq!(s.compose(&s).unwrap(), id);
    assert_eq!(s.inverse(), s);
    for a in all_addresses(2, 1, 3) {
        let mut w = a.word.clone();
        w[0] = 1 - w[0];
        assert_eq!(s.act(&a).unwrap(), Address { root: 0, word: w });
    }
    assert!(same_action(&s.compose(&s).unwrap(), &id));
}

#[test]
fn identity_examples() {
    let id = TreePair::identity(3, 2);
    assert_eq!(id.inverse(), id);
    let a = Address::parse("1:2102").unwrap();
    assert_eq!(id.act(&a).unwrap(), a);
    let expanded = TreePair::new_unreduced(Forest::parse(2, "(..)").unwrap(), Forest::parse(2, "(..)").unwrap(), vec![0, 1]).unwrap();
    assert!(!expanded.is_reduced());
    assert_eq!(expanded.reduce(), TreePair::identity(2, 1));
}

#[test]
fn errors() {
    assert!(matches!(sigma().act(&Address::root(0)), Err(Error::AddressTooShallow(_))));
    let other = TreePair::identity(3, 1);
    assert!(matches!(sigma().compose(&other), Err(Error::ParameterMismatch(_))));
    assert!(TreePair::new(Forest::trivial(2, 1), Forest::parse(2, "(..)").unwrap(), vec![0]).is_err());
}

#[test]
fn standard_generators_are_reduced_and_invertible() {
    for (name, g) in standard::all() {
        assert!(g.is_reduced(), "{name}");
        assert!(g.compose(&g.inverse()).unwrap().is_identity(), "{name}");
    }
}

fn params() -> impl Strategy<Value = (u32, u32, u64)> {
    (1u32..=3, 1u32..=3, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms((d, r, seed) in params()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_element(&mut rng, d, r, 6);
        let h = random_element(&mut rng, d, r, 6);
        let k = random_element(&mut rng, d, r, 6);
        let id = TreePair::identity(d, r);
        let gh_k = g.compose(&h).unwrap().compose(&k).unwrap();
        let g_hk = g.compose(&h.compose(&k).unwrap()).unwrap();
        prop_assert_eq!(&gh_k, &g_hk);
        prop_assert!(same_action(&gh_k, &g_hk));
        prop_assert_eq!(id.compose(&g).unwrap(), g.clone());
        prop_assert_eq!(g.compose(&id).unwrap(), g.clone());
        prop_assert_eq!(g.compose(&g.inverse()).unwrap(), id.clone());
        prop_assert_eq!(g.inverse().compose(&g).unwrap(), id);
        prop_assert_eq!(g.inverse().inverse(), g.clone());
        prop_assert!(g.is_reduced());
    }

    #[test]
    fn action_is_compatible_with_composition((d, r, seed) in params()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_element(&mut rng, d, r, 6);
        let h = random_element(&mut rng, d, r, 6);
        let gh = g.compose(&h).unwrap();
        for _ in 0..20 {
            let a = random_address(&mut rng, d, r, 12);
            prop_assert_eq!(gh.act(&a).unwrap(), g.act(&h.act(&a).unwrap()).unwrap());
        }
    }

    #[test]
    fn normal_form_matches_action((d, r, seed) in params()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_element(&mut rng, d, r, 5);
        let h = random_element(&mut rng, d, r, 5);
        prop_assert_eq!(g == h, same_action(&g, &h));
        // expanded copies act the same and reduce back
        let mut e = g.clone();
        for _ in 0..3 {
            let i = rng.gen_range(0..e.domain().leaf_count());
            e = e.expand(i);
        }
        prop_assert!(same_action(&e, &g));
        prop_assert_eq!(e.reduce(), g.clone());
        prop_assert_eq!(g == h, e.reduce() == h.reduce());
    }

    #[test]
    fn leaf_counts((d, r, seed) in params(), steps in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_element(&mut rng, d, r, 6);
        for f in [g.domain(), g.range()] {
            prop_assert_eq!(f.leaf_count(), (r + f.num_carets() as u32 * (d - 1)) as usize);
        }
        let mut e = g.clone();
        for _ in 0..steps {
            e = e.expand(rng.gen_range(0..e.domain().leaf_count()));
            prop_assert_eq!(e.domain().leaf_count(), (r + e.domain().num_carets() as u32 * (d - 1)) as usize);
        }
        let red = e.reduce();
        prop_assert_eq!(red.domain().leaf_count(), (r + red.domain().num_carets() as u32 * (d - 1)) as usize);
    }

    #[test]
    fn forests_display_and_parse((d, r, seed) in params()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = topokit::thompson::random_forest(&mut rng, d, r, 5);
        prop_assert_eq!(Forest::parse(d, &f.to_string()).unwrap(), f);
    }
}
