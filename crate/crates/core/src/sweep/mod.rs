//! Parameter sweeps over the squeezing parameter, their CSV and SVG outputs,
//! and the oracle verification suite.

pub mod config_file;
pub mod csv_io;
pub mod plot;
pub mod verify;

use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::correlations::{assemble_record_with_diagnostics, CorrelationRecord, Diagnostics, PipelineConfig};
use crate::error::{Error, Result};
use crate::states::{squeezing_from_acceleration, AccelerationSpec, SqueezingParameter};

pub use csv_io::{emit_csv, format_g12, read_csv, write_csv};
pub use plot::{emit_plots, render_figure, Figure};

/// Grid of squeezing parameters, given directly or through accelerations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepAxis {
    Squeezing {
        alpha_min: f64,
        alpha_max: f64,
        steps: usize,
    },
    /// Uniform in the proper acceleration `a` at fixed mode frequency `ω`.
    Acceleration {
        omega: f64,
        accel_min: f64,
        accel_max: f64,
        steps: usize,
    },
}

impl Default for SweepAxis {
    fn default() -> Self {
        SweepAxis::Squeezing { alpha_min: 0.0, alpha_max: 3.0, steps: 121 }
    }
}

fn uniform(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps).map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 }).collect()
}

impl SweepAxis {
    pub fn steps(&self) -> usize {
        match *self {
            SweepAxis::Squeezing { steps, .. } | SweepAxis::Acceleration { steps, .. } => steps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps() < 2 {
            return Err(Error::Config(format!("steps must be at least 2, got {}", self.steps())));
        }
        match *self {
            SweepAxis::Squeezing { alpha_min, alpha_max, .. } => {
                if !(alpha_min >= 0.0 && alpha_max > alpha_min && alpha_max.is_finite()) {
                    return Err(Error::Config(format!(
                        "need 0 <= alpha_min < alpha_max, got [{alpha_min}, {alpha_max}]"
                    )));
                }
            }
            SweepAxis::Acceleration { omega, accel_min, accel_max, .. } => {
                AccelerationSpec::new(omega, accel_min).map_err(|e| Error::Config(e.to_string()))?;
                if !(accel_max > accel_min && accel_max.is_finite()) {
                    return Err(Error::Config(format!(
                        "need 0 < accel_min < accel_max, got [{accel_min}, {accel_max}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Grid points in increasing order.
    pub fn alphas(&self) -> Result<Vec<SqueezingParameter>> {
        self.validate()?;
        match *self {
            SweepAxis::Squeezing { alpha_min, alpha_max, steps } => {
                uniform(alpha_min, alpha_max, steps).into_iter().map(SqueezingParameter::new).collect()
            }
            SweepAxis::Acceleration { omega, accel_min, accel_max, steps } => uniform(accel_min, accel_max, steps)
                .into_iter()
                .map(|accel| squeezing_from_acceleration(&AccelerationSpec { omega, accel }))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputPaths {
    pub csv: PathBuf,
    /// Directory for the SVG figures; `None` skips them.
    pub plots: Option<PathBuf>,
}

impl Default for OutputPaths {
    fn default() -> Self {
        OutputPaths { csv: PathBuf::from("rindler_corr.csv"), plots: None }
    }
}

impl OutputPaths {
    /// Metadata sits next to the CSV: `run.csv` → `run.meta.json`.
    pub fn metadata(&self) -> PathBuf {
        self.csv.with_extension("meta.json")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub pipeline: PipelineConfig,
    pub output: OutputPaths,
    /// `0` means one worker per available core.
    pub workers: usize,
}

impl SweepConfig {
    pub fn effective_workers(&self) -> usize {
        if self.workers > 0 {
            self.workers
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub version: String,
    pub config: SweepConfig,
    pub workers: usize,
    pub wall_time_s: f64,
    pub diagnostics: Diagnostics,
    pub max_truncation: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// One record per grid point, in increasing `α`.
    pub records: Vec<CorrelationRecord>,
    pub metadata: SweepMetadata,
}

/// Evaluates every grid point. Points are handed to the workers through a
/// shared counter and the results are put back in grid order, so the records
/// do not depend on the worker count.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    let start = Instant::now();
    let alphas = config.axis.alphas()?;
    let workers = config.effective_workers().min(alphas.len()).max(1);
    let next = AtomicUsize::new(0);
    let failed = AtomicBool::new(false);

    let work = || {
        let mut done = Vec::new();
        while !failed.load(Ordering::Relaxed) {
            let i = next.fetch_add(1, Ordering::Relaxed);
            let Some(&alpha) = alphas.get(i) else { break };
            let r = assemble_record_with_diagnostics(alpha, &config.pipeline);
            if r.is_err() {
                failed.store(true, Ordering::Relaxed);
            }
            done.push((i, r));
        }
        done
    };

    let mut slots: Vec<Option<Result<(CorrelationRecord, Diagnostics)>>> = (0..alphas.len()).map(|_| None).collect();
    let batches: Vec<_> = if workers == 1 {
        vec![work()]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|_| s.spawn(work)).collect();
            handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
        })
    };
    for (i, r) in batches.into_iter().flatten() {
        slots[i] = Some(r);
    }

    let mut records = Vec::with_capacity(alphas.len());
    let mut diagnostics = Diagnostics::default();
    for slot in slots {
        match slot {
            Some(Ok((record, d))) => {
                diagnostics.merge(&d);
                records.push(record);
            }
            Some(Err(e)) => return Err(e),
            // skipped after another point failed
            None => continue,
        }
    }

    let max_truncation = records.iter().map(|r| r.n_used).max().unwrap_or(0);
    Ok(SweepResult {
        records,
        metadata: SweepMetadata {
            version: crate::VERSION.to_string(),
            config: config.clone(),
            workers,
            wall_time_s: start.elapsed().as_secs_f64(),
            diagnostics,
            max_truncation,
        },
    })
}

/// Writes the CSV, the metadata JSON and, if requested, the figures.
pub fn write_outputs(result: &SweepResult) -> Result<()> {
    let out = &result.metadata.config.output;
    if let Some(dir) = out.csv.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    emit_csv(&result.records, &out.csv)?;
    std::fs::write(out.metadata(), serde_json::to_string_pretty(&result.metadata)?)?;
    if let Some(dir) = &out.plots {
        emit_plots(&result.records, dir)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let a = SweepAxis::default().alphas().unwrap();
        assert_eq!(a.len(), 121);
        assert_eq!(a[0].alpha(), 0.0);
        assert_eq!(a[120].alpha(), 3.0);
        assert_eq!(a[40].alpha(), 1.0);
    }

    #[test]
    fn axis_validation() {
        assert!(SweepAxis::Squeezing { alpha_min: 0.0, alpha_max: 1.0, steps: 1 }.alphas().is_err());
        assert!(SweepAxis::Squeezing { alpha_min: -0.5, alpha_max: 1.0, steps: 3 }.alphas().is_err());
        assert!(SweepAxis::Acceleration { omega: 1.0, accel_min: 0.0, accel_max: 1.0, steps: 3 }.alphas().is_err());
    }

    #[test]
    fn acceleration_grid_increases() {
        let a = SweepAxis::Acceleration { omega: 1.0, accel_min: 0.5, accel_max: 20.0, steps: 9 }.alphas().unwrap();
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn metadata_path() {
        let p = OutputPaths { csv: PathBuf::from("out/run.csv"), plots: None };
        assert_eq!(p.metadata(), PathBuf::from("out/run.meta.json"));
    }
}
