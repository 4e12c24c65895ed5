// Error paths construct JS values and only run inside a wasm host.

#[test]
fn point_is_record_json() {
    let v: serde_json::Value = serde_json::from_str(&rindler_corr_web::point(0.0).unwrap()).unwrap();
    assert!((v["I_AR"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(v["N_used"].as_u64().is_some());
}

#[test]
fn landscape_grid_shape_and_bounds() {
    let values = rindler_corr_web::landscape(0.8, "AR", 15).unwrap();
    assert_eq!(values.len(), 13 * 25);
    let best = values.iter().copied().fold(f64::MIN, f64::max);
    let record: serde_json::Value = serde_json::from_str(&rindler_corr_web::point(0.8).unwrap()).unwrap();
    // a coarse grid cannot beat the optimizer by more than the truncation gap
    assert!(best <= record["J_AR"].as_f64().unwrap() + 1e-5);
    assert!(values.iter().all(|&j| j > -1e-9 && j <= 1.0 + 1e-9));
}

#[test]
fn every_named_figure_renders() {
    for name in rindler_corr_web::figure_names() {
        let svg = rindler_corr_web::figure(&name, 1.0, 4).unwrap();
        assert!(svg.contains("<polyline"), "{name}");
    }
}
