//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rindler_corr::correlations::assemble_record;
use rindler_corr::states::{unruh_thermal_marginal, SqueezingParameter, TruncationPolicy};
use rindler_corr::sweep::verify::{series_checks, Check, VerifyOptions};
use rindler_corr::sweep::{run_sweep, write_csv, SweepConfig};
use rindler_corr::{CorrelationRecord, PipelineConfig};

const RUNTIME_BUDGET_S: f64 = 300.0;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn max_over(records: &[CorrelationRecord], f: impl Fn(&CorrelationRecord) -> f64) -> (f64, f64) {
    records.iter().map(|r| (f(r), r.alpha)).fold((0.0, f64::NAN), |best, c| if c.0 > best.0 { c } else { best })
}

fn conservation(records: &[CorrelationRecord], wall: f64) -> Outcome {
    let (worst, at) = max_over(records, |r| (r.i_ar + r.i_aantir - 2.0).abs());
    let ok = records.len() == 121 && worst < 1e-6 && wall < RUNTIME_BUDGET_S;
    outcome(
        ok,
        format!(
            "{} points, max |I_AR + I_AAntiR - 2| = {worst:.2e} at alpha = {at} (< 1e-6), sweep {wall:.1} s (< {RUNTIME_BUDGET_S} s)",
            records.len()
        ),
    )
}

fn inertial_limit(r: &CorrelationRecord) -> Outcome {
    let checks = [
        ("I_AR - 2", r.i_ar - 2.0, 1e-9),
        ("J_AR - 1", r.j_ar - 1.0, 1e-6),
        ("D_AR - 1", r.d_ar - 1.0, 1e-6),
        ("I_AAntiR", r.i_aantir, 1e-9),
        ("EF_RAntiR", r.ef_rantir, 1e-6),
    ];
    let ok = r.alpha == 0.0 && checks.iter().all(|&(_, v, tol)| v.abs() < tol);
    let detail =
        checks.iter().map(|(name, v, tol)| format!("|{name}| = {:.1e} (< {tol:.0e})", v.abs())).collect::<Vec<_>>();
    outcome(ok, format!("alpha = {}: {}", r.alpha, detail.join(", ")))
}

fn purification(records: &[CorrelationRecord]) -> Outcome {
    let (ar, _) = max_over(records, |r| (r.s_ar - r.s_antir).abs());
    let (aantir, _) = max_over(records, |r| (r.s_aantir - r.s_r).abs());
    let (rantir, _) = max_over(records, |r| (r.s_rantir - 1.0).abs());
    let ok = ar < 1e-8 && aantir < 1e-8 && rantir < 1e-8;
    outcome(
        ok,
        format!(
            "max |S_AR - S_AntiR| = {ar:.1e}, |S_AAntiR - S_R| = {aantir:.1e}, |S_RAntiR - 1| = {rantir:.1e} (< 1e-8)"
        ),
    )
}

fn from_checks(checks: &[Check], count: usize) -> Outcome {
    let worst = checks.iter().map(|c| c.value).fold(0.0, f64::max);
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let ok = checks.len() == count && failed.is_empty();
    let mut detail = format!("{} checks, worst deviation {worst:.2e}", checks.len());
    if !failed.is_empty() {
        detail += &format!(", failed: {}", failed.join("; "));
    }
    outcome(ok, detail)
}

fn figure_trends(records: &[CorrelationRecord]) -> Outcome {
    // exact ties between neighbours are allowed, increases beyond round-off are not
    let slack = 1e-12;
    let pairs = || records.windows(2);
    let i_ar_up = pairs().filter(|w| w[1].i_ar > w[0].i_ar + slack).count();
    let i_aantir_down = pairs().filter(|w| w[1].i_aantir < w[0].i_aantir - slack).count();
    let ef_down = pairs().filter(|w| w[1].ef_rantir < w[0].ef_rantir - slack).count();
    let (first, last) = (&records[0], &records[records.len() - 1]);
    let ok = i_ar_up == 0
        && i_aantir_down == 0
        && ef_down == 0
        && last.alpha == 3.0
        && last.d_ar > 0.01
        && last.ef_rantir > first.ef_rantir;
    outcome(
        ok,
        format!(
            "I_AR rises {i_ar_up}x, I_AAntiR falls {i_aantir_down}x, EF falls {ef_down}x; D_AR(3) = {:.6} (> 0.01); EF(3) = {:.6} > EF(0) = {:.1e}",
            last.d_ar, last.ef_rantir, first.ef_rantir
        ),
    )
}

fn kw_routes(records: &[CorrelationRecord]) -> Outcome {
    let (worst, at) = max_over(records, |r| (r.ef_rantir - r.ef_rantir_alt).abs());
    outcome(worst < 1e-5, format!("max |EF via R - EF via AntiR| = {worst:.2e} at alpha = {at} (< 1e-5)"))
}

fn truncation_doubling(base: &CorrelationRecord) -> Outcome {
    let alpha = SqueezingParameter::new(base.alpha).expect("grid value");
    let config = PipelineConfig { truncation: TruncationPolicy::Fixed(2 * base.n_used), ..PipelineConfig::default() };
    let doubled = match assemble_record(alpha, &config) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("record at N = {} failed: {e}", 2 * base.n_used)),
    };
    let (worst, name) = base
        .measures()
        .iter()
        .zip(doubled.measures())
        .map(|(&(name, x), (_, y))| ((x - y).abs(), name))
        .fold((0.0, "-"), |best, c| if c.0 > best.0 { c } else { best });
    outcome(
        base.alpha == 3.0 && worst < 1e-8,
        format!(
            "alpha = {}: N {} -> {}, max change {worst:.2e} in {name} (< 1e-8)",
            base.alpha, base.n_used, doubled.n_used
        ),
    )
}

fn thermal_ratios() -> Outcome {
    let mut worst: f64 = 0.0;
    for a in [0.25, 0.5 * 3f64.ln(), 1.0, 2.0, 3.0] {
        let alpha = SqueezingParameter::new(a).unwrap();
        let n = PipelineConfig::default().truncation.resolve(alpha).unwrap();
        let rho = unruh_thermal_marginal(alpha, n);
        let expected = a.tanh().powi(2);
        for k in 0..n {
            let ratio = rho.entry(k + 1, k + 1).re / rho.entry(k, k).re;
            worst = worst.max((ratio - expected).abs());
        }
    }
    outcome(worst < 1e-12, format!("max |p(n+1)/p(n) - tanh^2 alpha| = {worst:.2e} over 5 alpha values (< 1e-12)"))
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rindler-corr"))
}

fn cli_sweep_bytes(dir: &Path, workers: usize) -> Result<Vec<u8>, String> {
    let csv = dir.join("sweep.csv");
    let status = cli()
        .args(["sweep", "--workers", &workers.to_string(), "--out"])
        .arg(&csv)
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("sweep exited with {status}"));
    }
    std::fs::read(&csv).map_err(|e| e.to_string())
}

struct VerifyRun {
    exit_ok: bool,
    checks: Vec<Check>,
}

fn cli_verify() -> Result<VerifyRun, String> {
    let out = cli().args(["verify", "--json"]).output().map_err(|e| e.to_string())?;
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("verify output: {e}"))?;
    let checks = report["checks"]
        .as_array()
        .ok_or("verify output lacks checks")?
        .iter()
        .map(|c| Check {
            name: c["name"].as_str().unwrap_or_default().to_string(),
            value: c["value"].as_f64().unwrap_or(f64::NAN),
            tolerance: c["tolerance"].as_f64().unwrap_or(f64::NAN),
            passed: c["passed"].as_bool().unwrap_or(false),
        })
        .collect();
    Ok(VerifyRun { exit_ok: out.status.success(), checks })
}

fn main() {
    let scratch = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&scratch).expect("scratch directory");

    let start = Instant::now();
    let config = SweepConfig { workers: 1, ..SweepConfig::default() };
    let result = run_sweep(&config).expect("default sweep");
    let wall = start.elapsed().as_secs_f64();
    let records = &result.records;
    let mut in_process = Vec::new();
    write_csv(records, &mut in_process).expect("in-memory CSV");

    let verify = cli_verify();
    let optimizer_checks = |v: &VerifyRun| -> Vec<Check> {
        v.checks.iter().filter(|c| c.name.contains("optimizer vs")).cloned().collect()
    };

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("conservation law", conservation(records, wall)));
    results.push(("inertial limit", inertial_limit(&records[0])));
    results.push(("purification identities", purification(records)));
    results.push(("series oracle", from_checks(&series_checks(&VerifyOptions::default()).expect("series checks"), 15)));
    results.push((
        "optimizer vs 1 deg grid",
        match &verify {
            Ok(v) => from_checks(&optimizer_checks(v), 10),
            Err(e) => outcome(false, e.clone()),
        },
    ));
    results.push(("figure trends", figure_trends(records)));
    results.push(("Koashi-Winter routes", kw_routes(records)));
    results.push(("truncation doubling", truncation_doubling(&records[records.len() - 1])));
    results.push(("thermal marginal", thermal_ratios()));
    results.push((
        "determinism",
        match (cli_sweep_bytes(&scratch, 2), &verify) {
            (Ok(bytes), Ok(v)) => outcome(
                bytes == in_process && v.exit_ok,
                format!(
                    "CLI sweep on 2 workers {} the in-process CSV ({} bytes); verify {}",
                    if bytes == in_process { "matches" } else { "differs from" },
                    in_process.len(),
                    if v.exit_ok { "exits 0" } else { "exits nonzero" }
                ),
            ),
            (Err(e), _) => outcome(false, e),
            (_, Err(e)) => outcome(false, e.clone()),
        },
    ));

    let mut failed = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        if !o.passed {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
