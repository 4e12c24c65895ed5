//! Oracle suite: closed-form series against partial traces, the optimizer
//! against an exhaustive angular grid, and the truncation rule against the
//! tail sums.

use serde::Serialize;

use crate::correlations::{assemble_record, PipelineConfig};
use crate::error::Result;
use crate::oracle::{grid_search_j, rho_a_antir_series, rho_ar_series, rho_r_antir_series, tail_weight};
use crate::states::{self, required_truncation, Branch, SqueezingParameter};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Measured deviation.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn within(name: String, value: f64, tolerance: f64) -> Self {
        Check { name, value, tolerance, passed: value.is_finite() && value < tolerance }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub series_alphas: Vec<f64>,
    pub spot_alphas: Vec<f64>,
    pub resolution_deg: u32,
    pub pipeline: PipelineConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let half = 0.5 * 3f64.ln();
        VerifyOptions {
            series_alphas: vec![0.0, 0.25, half, 1.0, 2.0],
            spot_alphas: vec![0.0, 0.25, half, 1.0, 1.5],
            resolution_deg: 1,
            pipeline: PipelineConfig::default(),
        }
    }
}

/// Entrywise distance between the closed-form series and the partial traces
/// at the adaptive truncation.
pub fn series_checks(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &a in &opts.series_alphas {
        let alpha = SqueezingParameter::new(a)?;
        let n = opts.pipeline.truncation.resolve(alpha)?;
        let system = states::RindlerSystem::new(alpha, n)?;
        for (label, dev) in [
            ("rho_AR", rho_ar_series(alpha, n).max_deviation(&system.rho_ar())?),
            ("rho_AAntiR", rho_a_antir_series(alpha, n).max_deviation(&system.rho_a_antir())?),
            ("rho_RAntiR", rho_r_antir_series(alpha, n).max_deviation(&system.rho_r_antir())?),
        ] {
            out.push(Check::within(format!("series {label} alpha={a:.6} N={n}"), dev, 1e-12));
        }
    }
    Ok(out)
}

/// `|J_optimizer − J_grid|` for both bipartitions at each spot value.
pub fn optimizer_checks(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let tol = &opts.pipeline.tolerances;
    let mut out = Vec::new();
    for &a in &opts.spot_alphas {
        let alpha = SqueezingParameter::new(a)?;
        let record = assemble_record(alpha, &opts.pipeline)?;
        let n = record.n_used;
        let (grid_ar, _) = grid_search_j(&states::rho_ar(alpha, n), opts.resolution_deg, tol)?;
        let (grid_aantir, _) = grid_search_j(&states::rho_a_antir(alpha, n), opts.resolution_deg, tol)?;
        let res = opts.resolution_deg;
        out.push(Check::within(
            format!("J_AR optimizer vs {res} deg grid alpha={a:.6}"),
            (record.j_ar - grid_ar).abs(),
            1e-6,
        ));
        out.push(Check::within(
            format!("J_AAntiR optimizer vs {res} deg grid alpha={a:.6}"),
            (record.j_aantir - grid_aantir).abs(),
            1e-6,
        ));
    }
    Ok(out)
}

/// The adaptive cutoff is the first `N` whose closed-form tails fit the
/// budget, and the tails shrink with `N`.
pub fn tail_checks(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let eps = match opts.pipeline.truncation {
        states::TruncationPolicy::Adaptive { tail_eps } => tail_eps,
        states::TruncationPolicy::Fixed(_) => states::DEFAULT_TAIL_EPS,
    };
    let mut out = Vec::new();
    for &a in opts.series_alphas.iter().chain(&[3.0]) {
        let alpha = SqueezingParameter::new(a)?;
        let n = required_truncation(alpha, eps)?;
        let worst = |m: usize| tail_weight(alpha, m, Branch::Vacuum).max(tail_weight(alpha, m, Branch::OneParticle));
        // distance of the cutoff from the first admissible N
        let mut first = 1;
        while worst(first) >= eps {
            first += 1;
        }
        out.push(Check::within(format!("truncation alpha={a:.6} N={n}"), n.abs_diff(first) as f64, 0.5));
        if a > 0.0 {
            let increases = (1..n).filter(|&m| worst(m + 1) >= worst(m)).count();
            out.push(Check::within(format!("tail decreasing alpha={a:.6}"), increases as f64, 0.5));
        }
    }
    Ok(out)
}

/// Level ratios of the thermal marginal against `tanh²α`.
pub fn thermal_checks(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &a in opts.series_alphas.iter().filter(|&&a| a > 0.0) {
        let alpha = SqueezingParameter::new(a)?;
        let n = opts.pipeline.truncation.resolve(alpha)?;
        let m = states::unruh_thermal_marginal(alpha, n);
        let x = alpha.level_ratio();
        let worst = (0..n).map(|k| (m.entry(k + 1, k + 1).re / m.entry(k, k).re - x).abs()).fold(0.0, f64::max);
        out.push(Check::within(format!("thermal ratio alpha={a:.6}"), worst, 1e-12));
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run_verification(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = series_checks(opts)?;
    checks.extend(tail_checks(opts)?);
    checks.extend(thermal_checks(opts)?);
    checks.extend(optimizer_checks(opts)?);
    Ok(VerifyReport { checks })
}
