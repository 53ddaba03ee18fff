use qsym_core::graph::{parse_graph, DirectedMultigraph, VertexMatrix};
use qsym_core::kms::{
    check_invariance, perron_vector, spectral_radius, KmsWeightVector, SpectralReport, WARN_NOT_STRICTLY_POSITIVE,
};
use qsym_core::BigRational;

#[test]
fn edge_list_and_adjacency_agree() {
    let text = "# two loops and a bridge\nvertices 2\nedge 1 1\nedge 1 2\nedge 2 2\n";
    let a = parse_graph(text).unwrap();
    let b = parse_graph(r#"{"vertices": 2, "adjacency": [[1, 1], [0, 1]]}"#).unwrap();
    assert_eq!(a.vertex_matrix(), b.vertex_matrix());
    let report = SpectralReport::new(&a.vertex_matrix());
    assert!((report.rho - 1.0).abs() < 1e-12);
    assert!(report.warnings.iter().any(|w| w == WARN_NOT_STRICTLY_POSITIVE));
}

#[test]
fn loops_report_serializes() {
    let d = DirectedMultigraph::loops(4).unwrap().vertex_matrix();
    let doc = serde_json::to_value(SpectralReport::new(&d)).unwrap();
    assert_eq!(doc["rho"], 1.0);
    assert_eq!(doc["critical_beta"], 0.0);
    assert_eq!(doc["eigenspace_dimension"], 4);
    assert_eq!(doc["kms_exists_at_critical"], true);
}

#[test]
fn relabelling_preserves_spectral_data() {
    let d = VertexMatrix::from_rows(vec![vec![0, 2, 1], vec![1, 0, 0], vec![1, 1, 1]]).unwrap();
    let g = d.to_graph();
    let h = g.relabel(&[2, 3, 1]).unwrap();
    assert!((spectral_radius(&d) - spectral_radius(&h.vertex_matrix())).abs() < 1e-9);
    let pv = perron_vector(&d).unwrap().to_f64();
    let ph = perron_vector(&h.vertex_matrix()).unwrap().to_f64();
    let mut a = pv.clone();
    let mut b = ph.clone();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-9);
    }
}

#[test]
fn sinks_are_reported() {
    let g = parse_graph("vertices 2\nedge 1 2\nedge 1 1\n").unwrap();
    assert!(g.has_sink());
    assert!(parse_graph("vertices 2\nedge 1 3\n").is_err());
}

#[test]
fn invariance_for_loops_holds_for_any_probability_vector() {
    let d = VertexMatrix::identity(3);
    let c = KmsWeightVector::at_zero(vec![
        BigRational::new(1.into(), 7.into()),
        BigRational::new(2.into(), 7.into()),
        BigRational::new(4.into(), 7.into()),
    ])
    .unwrap();
    assert!(check_invariance(&d, &c).unwrap());
}
