use super::*;
use crate::thompson::standard;

fn gens2() -> Vec<TreePair> {
    standard::all().into_iter().map(|(_, g)| g).collect()
}

#[test]
fn identity_only_d2_r1_s1() {
    let t = build_truncation(2, 1, 1, &[], TruncationOptions::default()).unwrap();
    assert_eq!(t.cube_counts(), vec![2, 1]);
}

#[test]
fn identity_only_d1_r3_s2() {
    let t = build_truncation(1, 3, 2, &[], TruncationOptions::default()).unwrap();
    assert_eq!(t.vertices().len(), 10);
    assert_eq!(t.vertices_by_height(), vec![1, 3, 6]);
    assert!(t.check_intervals().passed());
    assert!(t.homology().is_trivial());
}

#[test]
fn merge_undoes_split() {
    let b = SfVertex::base(2, 1);
    let up = b.up(0);
    assert_eq!(up.copies(), 2);
    let below = up.below();
    assert_eq!(below.len(), 2);
    assert!(below.contains(&b));
    let swapped = b.act(&standard::sigma()).unwrap();
    assert!(below.contains(&swapped));
    assert_ne!(swapped, b);
    assert!(b.precedes(&up) && swapped.precedes(&up));
    assert!(!up.precedes(&b));
}

#[test]
fn sigma_fixes_first_split() {
    let up = SfVertex::base(2, 1).up(0);
    assert_eq!(up.act(&standard::sigma()).unwrap(), up);
}

#[test]
fn base_orbit_under_sigma() {
    let o = orbit(&SfVertex::base(2, 1), &[standard::sigma()], 100).unwrap();
    assert_eq!(o.len(), 2);
}

#[test]
fn element_moves_base_to_split_class() {
    // g∘φ_D = φ_R up to permuting copies
    let x0 = standard::x0();
    let b = SfVertex::base(2, 1);
    let top = b.up(0).up(0);
    let moved = b.act(&x0).unwrap();
    let mut found = false;
    for w in moved.above() {
        for z in w.above() {
            found |= t_eq(&z, &top) || b.up(0).above().contains(&z);
        }
    }
    assert!(found);
}

fn t_eq(a: &SfVertex, b: &SfVertex) -> bool {
    a == b
}

#[test]
fn representative_leaf_count() {
    let t = build_truncation(2, 1, 2, &gens2(), TruncationOptions::default()).unwrap();
    for v in t.vertices() {
        let (f, g) = v.representative();
        assert_eq!(f.leaf_count() as u32, v.copies());
        assert_eq!(SfVertex::new(v.height(), &g.compose(&TreePair::from_forest(&f)).unwrap()).unwrap(), *v);
    }
}

#[test]
fn d1_descending_links() {
    for k in 0..5 {
        let mut v = SfVertex::base(1, 3);
        for i in 0..k {
            v = v.up(i % 3);
        }
        let lk = descending_link(&v);
        let (f, _) = v.representative();
        assert_eq!(lk.dim(), nonempty_branches(&f) as i32 - 1);
    }
}

#[test]
fn d2_truncations_connected() {
    for s in 1..=3u32 {
        let gens: Vec<TreePair> = gens2()
            .into_iter()
            .filter(|g| g.domain().num_carets() as u32 <= s)
            .collect();
        let t = build_truncation(2, 1, s, &gens, TruncationOptions::default()).unwrap();
        assert!(t.check_intervals().passed(), "s = {s}");
        assert!(t.homology().degree(0).is_zero(), "s = {s}");
    }
}

#[test]
fn census_is_bounded() {
    let gens: Vec<TreePair> = gens2().into_iter().take(3).collect();
    let t = build_truncation(2, 1, 2, &gens, TruncationOptions::default()).unwrap();
    let c = t.orbit_census(&gens).unwrap();
    for (o, n) in c.vertex_orbits_by_height.iter().zip(&c.vertices_by_height) {
        assert!(o <= n);
    }
}

#[test]
fn cap_is_enforced() {
    let opts = TruncationOptions {
        max_vertices: 5,
        gen_rounds: 1,
    };
    assert_eq!(
        build_truncation(1, 3, 3, &[], opts).unwrap_err(),
        Error::BudgetExceeded(5)
    );
}

#[test]
fn wrong_group_is_rejected() {
    let g = TreePair::identity(2, 2);
    assert!(matches!(
        build_truncation(2, 1, 1, &[g], TruncationOptions::default()),
        Err(Error::ParameterMismatch(_))
    ));
}
