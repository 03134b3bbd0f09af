use std::collections::{BTreeMap, BTreeSet};

use topokit::coloring::{extend_coloring, verify_extension, verify_sphere, LabeledTriangulation};
use topokit::complex::{Simplex, SimplicialComplex, VertexLabeling};
use topokit::error::Error;
use topokit::flow::{check_flow_hypotheses, cross_check_retraction, run_flow, trace, FlowData, DEFAULT_K_MAX};

fn s(v: &[u32]) -> Simplex {
    Simplex::new(v.iter().copied())
}

fn flow(x: SimplicialComplex, y: SimplicialComplex, c: &[(u32, u64)], delta: &[(u32, u32)], vsel: &[(&[u32], u32)]) -> FlowData {
    FlowData::new(
        x,
        y,
        c.iter().copied().collect(),
        delta.iter().copied().collect(),
        vsel.iter().map(|(t, v)| (s(t), *v)).collect(),
    )
    .unwrap()
}

// a = 0, b = 1, c = 2
fn path(delta_c: u32) -> FlowData {
    flow(
        SimplicialComplex::from_facets([[0, 1], [1, 2]]),
        SimplicialComplex::full_simplex([0]),
        &[(0, 0), (1, 1), (2, 2)],
        &[(1, 0), (2, delta_c)],
        &[(&[1, 2], 2), (&[0, 1], 1), (&[1], 1), (&[2], 2)],
    )
}

fn triangle() -> FlowData {
    flow(
        SimplicialComplex::full_simplex([1, 2, 3]),
        SimplicialComplex::full_simplex([1, 2]),
        &[(1, 0), (2, 0), (3, 1)],
        &[(3, 1)],
        &[(&[3], 3), (&[1, 3], 3), (&[2, 3], 3), (&[1, 2, 3], 3)],
    )
}

#[test]
fn path_flow() {
    let f = path(1);
    let r = check_flow_hypotheses(&f, DEFAULT_K_MAX).unwrap();
    assert_eq!(r.max_descent_steps, 1);
    assert_eq!(trace(&f, &s(&[1, 2]), DEFAULT_K_MAX).unwrap().simplices, vec![s(&[1, 2]), s(&[1]), s(&[0])]);
    assert!(trace(&f, &s(&[0]), DEFAULT_K_MAX).unwrap().is_empty());
    assert!(cross_check_retraction(&f).equal);
}

#[test]
fn path_flow_bad_delta() {
    assert_eq!(
        check_flow_hypotheses(&path(0), DEFAULT_K_MAX).unwrap_err(),
        Error::HypothesisViolation {
            condition: 1,
            witness: s(&[1, 2])
        }
    );
}

#[test]
fn trivial_flow() {
    let x = SimplicialComplex::full_simplex([1, 2, 3]);
    let f = flow(x.clone(), x, &[(1, 0), (2, 0), (3, 0)], &[], &[]);
    assert_eq!(check_flow_hypotheses(&f, DEFAULT_K_MAX).unwrap().simplices_checked, 0);
    assert_eq!(run_flow(&f, DEFAULT_K_MAX).unwrap().max_len, 0);
}

#[test]
fn triangle_flow() {
    let f = triangle();
    check_flow_hypotheses(&f, DEFAULT_K_MAX).unwrap();
    let run = run_flow(&f, DEFAULT_K_MAX).unwrap();
    let ends: BTreeMap<Simplex, Simplex> = run.traces.iter().map(|t| (t.start().clone(), t.end().clone())).collect();
    assert_eq!(ends[&s(&[3])], s(&[1]));
    assert_eq!(ends[&s(&[1, 3])], s(&[1]));
    assert_eq!(ends[&s(&[2, 3])], s(&[1, 2]));
    assert_eq!(ends[&s(&[1, 2, 3])], s(&[1, 2]));
    assert!(run.traces.iter().all(|t| t.len() <= 2));
    assert!(cross_check_retraction(&f).equal);
}

#[test]
fn invalid_flow_data_is_rejected() {
    let x = SimplicialComplex::from_facets([[0, 1]]);
    let y = SimplicialComplex::full_simplex([0]);
    let c: BTreeMap<u32, u64> = [(0, 0), (1, 0)].into_iter().collect();
    assert!(FlowData::new(x.clone(), y.clone(), c, BTreeMap::new(), BTreeMap::new()).is_err());
    let c: BTreeMap<u32, u64> = [(0, 0), (1, 1)].into_iter().collect();
    let missing_vsel = FlowData::new(x, y, c, [(1, 0)].into_iter().collect(), BTreeMap::new());
    assert!(matches!(missing_vsel, Err(Error::InvalidFlowData(_))));
}

fn labeled(x: SimplicialComplex, labels: &[(u32, u32)]) -> LabeledTriangulation {
    LabeledTriangulation {
        complex: x,
        labeling: VertexLabeling::from_pairs(labels.iter().copied()),
    }
}

fn set(v: &[u32]) -> BTreeSet<u32> {
    v.iter().copied().collect()
}

#[test]
fn spheres() {
    assert!(verify_sphere(&SimplicialComplex::simplex_boundary([1, 2, 3]), 1));
    assert!(verify_sphere(&SimplicialComplex::simplex_boundary([1, 2, 3, 4]), 2));
    let mobius = SimplicialComplex::from_facets([[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 1], [5, 1, 2]]);
    assert!(!verify_sphere(&mobius, 2));
    assert!(!verify_sphere(&mobius, 1));
}

#[test]
fn two_points_two_labels() {
    let pts = labeled(SimplicialComplex::from_facets([[0], [1]]), &[(0, 1), (1, 2)]);
    let e0 = set(&[1, 2]);
    let d = extend_coloring(&pts, &e0, 0).unwrap();
    assert_eq!(d.complex.f_vector(), vec![4, 3]);
    // path x - y' - x' - y
    let interior: Vec<u32> = d.complex.vertices().into_iter().filter(|v| *v > 1).collect();
    let mut labels: Vec<u32> = interior.iter().map(|v| d.labeling.get(*v).unwrap()).collect();
    labels.sort();
    assert_eq!(labels, vec![1, 2]);
    assert!(verify_extension(&pts, &d, &e0, 0).all_passed());
}

#[test]
fn two_points_three_labels() {
    let pts = labeled(SimplicialComplex::from_facets([[0], [1]]), &[(0, 1), (1, 2)]);
    let e0 = set(&[1, 2, 3]);
    let d = extend_coloring(&pts, &e0, 0).unwrap();
    assert_eq!(d.complex.f_vector(), vec![3, 2]);
    assert_eq!(d.labeling.get(2), Some(3));
    assert!(verify_extension(&pts, &d, &e0, 0).all_passed());
}

#[test]
fn triangle_needs_subdivision() {
    let circle = labeled(SimplicialComplex::simplex_boundary([0, 1, 2]), &[(0, 1), (1, 2), (2, 3)]);
    let e0 = set(&[1, 2, 3]);
    let d = extend_coloring(&circle, &e0, 1).unwrap();
    assert!(d.complex.num_vertices() > 4);
    let r = verify_extension(&circle, &d, &e0, 1);
    assert!(r.all_passed(), "{r:?}");

    let cone = labeled(
        SimplicialComplex::simplex_boundary([0, 1, 2]).cone(3).unwrap(),
        &[(0, 1), (1, 2), (2, 3), (3, 1)],
    );
    let r = verify_extension(&circle, &cone, &e0, 1);
    assert!(!r.repeated_labels.passed);
    assert_eq!(r.repeated_labels.witness.as_deref(), Some("{0,3}"));
    assert!(!verify_extension(&circle, &circle, &e0, 1).disk.passed);
}

#[test]
fn coloring_errors() {
    let pts = labeled(SimplicialComplex::from_facets([[0], [1]]), &[(0, 1), (1, 2)]);
    assert!(matches!(extend_coloring(&pts, &set(&[1]), 0), Err(Error::InsufficientLabels { .. })));
    assert!(matches!(extend_coloring(&pts, &set(&[1, 2, 3, 4, 5]), 3), Err(Error::UnsupportedDimension(3))));
    assert!(matches!(extend_coloring(&pts, &set(&[1, 2, 3]), 1), Err(Error::NotASphere(1))));
}
