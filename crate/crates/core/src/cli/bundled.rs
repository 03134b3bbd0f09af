/// Fixtures compiled into the binary, `(file name, text)`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("badsimplex_boundary_fails.json", include_str!("../../fixtures/badsimplex_boundary_fails.json")),
    ("badsimplex_empty_bar.json", include_str!("../../fixtures/badsimplex_empty_bar.json")),
    ("badsimplex_triangle.json", include_str!("../../fixtures/badsimplex_triangle.json")),
    ("coloring_cone_rejected.json", include_str!("../../fixtures/coloring_cone_rejected.json")),
    ("coloring_disk_is_sphere.json", include_str!("../../fixtures/coloring_disk_is_sphere.json")),
    ("coloring_points_three_labels.json", include_str!("../../fixtures/coloring_points_three_labels.json")),
    ("coloring_points_two_labels.json", include_str!("../../fixtures/coloring_points_two_labels.json")),
    ("coloring_triangle.json", include_str!("../../fixtures/coloring_triangle.json")),
    ("fiber2_collapse.json", include_str!("../../fixtures/fiber2_collapse.json")),
    ("fiber2_fold_fails.json", include_str!("../../fixtures/fiber2_fold_fails.json")),
    ("fiber_identity.json", include_str!("../../fixtures/fiber_identity.json")),
    ("fiber_path_fails.json", include_str!("../../fixtures/fiber_path_fails.json")),
    ("flow_path_bad_delta.json", include_str!("../../fixtures/flow_path_bad_delta.json")),
    ("flow_path_check.json", include_str!("../../fixtures/flow_path_check.json")),
    ("flow_path_run.json", include_str!("../../fixtures/flow_path_run.json")),
    ("flow_triangle_run.json", include_str!("../../fixtures/flow_triangle_run.json")),
    ("flow_trivial.json", include_str!("../../fixtures/flow_trivial.json")),
    ("hconn_empty.json", include_str!("../../fixtures/hconn_empty.json")),
    ("hconn_sphere.json", include_str!("../../fixtures/hconn_sphere.json")),
    ("hconn_two_points.json", include_str!("../../fixtures/hconn_two_points.json")),
    ("homology_json_format.json", include_str!("../../fixtures/homology_json_format.json")),
    ("homology_projective_plane.json", include_str!("../../fixtures/homology_projective_plane.json")),
    ("homology_sphere.json", include_str!("../../fixtures/homology_sphere.json")),
    ("homology_torus.json", include_str!("../../fixtures/homology_torus.json")),
    ("join2_bipartite.json", include_str!("../../fixtures/join2_bipartite.json")),
    ("join2_not_complete.json", include_str!("../../fixtures/join2_not_complete.json")),
    ("join_complete.json", include_str!("../../fixtures/join_complete.json")),
    ("join_edge_removed.json", include_str!("../../fixtures/join_edge_removed.json")),
    ("parse_error_line.json", include_str!("../../fixtures/parse_error_line.json")),
    ("sf_base_desclink.json", include_str!("../../fixtures/sf_base_desclink.json")),
    ("sf_d1_r3_s2.json", include_str!("../../fixtures/sf_d1_r3_s2.json")),
    ("sf_d1_top_desclink.json", include_str!("../../fixtures/sf_d1_top_desclink.json")),
    ("sf_d2_census.json", include_str!("../../fixtures/sf_d2_census.json")),
    ("sf_d2_s0.json", include_str!("../../fixtures/sf_d2_s0.json")),
    ("sf_d2_s1.json", include_str!("../../fixtures/sf_d2_s1.json")),
    ("teo_m_sphere_m1.json", include_str!("../../fixtures/teo_m_sphere_m1.json")),
    ("teo_m_sphere_m2.json", include_str!("../../fixtures/teo_m_sphere_m2.json")),
    ("teo_m_two_triangles.json", include_str!("../../fixtures/teo_m_two_triangles.json")),
    ("thompson_compose_mismatch.json", include_str!("../../fixtures/thompson_compose_mismatch.json")),
    ("thompson_reduce_expanded_identity.json", include_str!("../../fixtures/thompson_reduce_expanded_identity.json")),
    ("thompson_sigma_act.json", include_str!("../../fixtures/thompson_sigma_act.json")),
    ("thompson_sigma_inverse.json", include_str!("../../fixtures/thompson_sigma_inverse.json")),
    ("thompson_sigma_squared.json", include_str!("../../fixtures/thompson_sigma_squared.json")),
    ("wcm_edge.json", include_str!("../../fixtures/wcm_edge.json")),
    ("wcm_sphere.json", include_str!("../../fixtures/wcm_sphere.json")),
    ("wcm_two_triangles.json", include_str!("../../fixtures/wcm_two_triangles.json")),
    ("xm_sphere.json", include_str!("../../fixtures/xm_sphere.json")),
    ("xm_triangle.json", include_str!("../../fixtures/xm_triangle.json")),
];
