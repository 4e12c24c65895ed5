use rindler_corr::sweep::plot::Figure;
use rindler_corr::sweep::{
    emit_plots, format_g12, read_csv, render_figure, run_sweep, write_csv, SweepAxis, SweepConfig,
};
use rindler_corr::{assemble_record, CorrelationRecord, PipelineConfig};

fn small_sweep(workers: usize) -> Vec<CorrelationRecord> {
    let axis = SweepAxis::Squeezing { alpha_min: 0.0, alpha_max: 1.5, steps: 7 };
    run_sweep(&SweepConfig { axis, workers, ..SweepConfig::default() }).unwrap().records
}

#[test]
fn csv_layout_and_round_trip() {
    let records = small_sweep(1);
    let mut buf = Vec::new();
    write_csv(&records, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(format!("# rindler-corr v{}", rindler_corr::VERSION).as_str()));
    assert!(lines.next().unwrap().starts_with("alpha,S_A,S_R,S_AntiR,I_AR,"));
    assert_eq!(text.lines().count(), records.len() + 2);
    assert!(!text.contains('\r'));

    let back = read_csv(buf.as_slice()).unwrap();
    assert_eq!(back.len(), records.len());
    for (a, b) in records.iter().zip(&back) {
        assert_eq!(a.n_used, b.n_used);
        for ((name, x), (_, y)) in a.measures().iter().zip(b.measures()) {
            assert_eq!(format_g12(*x), format_g12(y), "{name} at alpha = {}", a.alpha);
        }
    }
}

#[test]
fn worker_count_does_not_change_the_records() {
    let one = small_sweep(1);
    let three = small_sweep(3);
    assert_eq!(one, three);
}

#[test]
fn acceleration_axis_reproduces_direct_records() {
    let axis = SweepAxis::Acceleration { omega: 1.0, accel_min: 0.5, accel_max: 6.0, steps: 4 };
    let swept = run_sweep(&SweepConfig { axis, workers: 1, ..SweepConfig::default() }).unwrap().records;
    let alphas = axis.alphas().unwrap();
    for (record, alpha) in swept.iter().zip(alphas) {
        assert_eq!(record, &assemble_record(alpha, &PipelineConfig::default()).unwrap());
    }
}

fn polylines(svg: &str) -> usize {
    svg.matches("<polyline").count()
}

#[test]
fn figures_have_the_expected_curves() {
    let records = small_sweep(1);
    let expected = [
        (Figure::Entropies, 3),
        (Figure::MutualInformation, 3),
        (Figure::CorrelationsAR, 3),
        (Figure::CorrelationsAAntiR, 3),
        (Figure::EntanglementOfFormation, 1),
    ];
    for (figure, curves) in expected {
        let svg = render_figure(figure, &records);
        assert!(svg.starts_with("<?xml") || svg.starts_with("<svg"), "{}", figure.name());
        assert!(svg.contains("squeezing parameter"));
        assert_eq!(polylines(&svg), curves, "{}", figure.name());
        assert!(!svg.contains("href"), "figures must be self-contained");
    }
    assert!(polylines(&render_figure(Figure::Compared, &records)) >= 4);

    // the mutual-information curves shown sum to two at every point
    for r in &records {
        assert!((r.i_ar + r.i_aantir - 2.0).abs() < 1e-9);
    }
    assert_eq!(records[0].ef_rantir, 0.0);
}

#[test]
fn plots_are_written_to_disk() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("outputs_plots");
    let _ = std::fs::remove_dir_all(&dir);
    emit_plots(&small_sweep(1), &dir).unwrap();
    for f in Figure::ALL {
        let text = std::fs::read_to_string(dir.join(format!("{}.svg", f.name()))).unwrap();
        assert!(text.trim_end().ends_with("</svg>"));
        assert_eq!(Figure::from_name(f.name()), Some(f));
    }
}
