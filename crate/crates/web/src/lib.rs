//! Browser bindings: single-point records, the conditional-entropy landscape
//! over Alice's measurement directions, and the sweep figures.

use wasm_bindgen::prelude::*;

use rindler_corr::correlations::{unmeasured_marginal, MeasurementDirection, MeasurementKernel};
use rindler_corr::states::{RindlerSystem, TruncationPolicy};
use rindler_corr::sweep::{render_figure, Figure, SweepAxis};
use rindler_corr::{assemble_record, PipelineConfig, SqueezingParameter};

fn js(e: rindler_corr::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Record at `alpha` as JSON, with the same field names as the CSV columns.
#[wasm_bindgen]
pub fn point(alpha: f64) -> Result<String, JsError> {
    let record =
        assemble_record(SqueezingParameter::new(alpha).map_err(js)?, &PipelineConfig::default()).map_err(js)?;
    Ok(serde_json::to_string(&record)?)
}

/// `S(A:X) − H(X | measurement)` on a `(θ, φ)` grid with `step_deg` spacing,
/// for `pair` equal to `"AR"` or `"AAntiR"`. Row-major in θ, so the result
/// holds `(180/step + 1) × (360/step + 1)` values.
///
/// Evaluated at the coarser truncation the optimizer searches on.
#[wasm_bindgen]
pub fn landscape(alpha: f64, pair: &str, step_deg: u32) -> Result<Vec<f64>, JsError> {
    if step_deg == 0 || 180 % step_deg != 0 {
        return Err(JsError::new("step must divide 180"));
    }
    let config = PipelineConfig::default();
    let alpha = SqueezingParameter::new(alpha).map_err(js)?;
    let tail_eps = config.optimizer.search_tail_eps.unwrap_or(rindler_corr::states::DEFAULT_TAIL_EPS);
    let system = RindlerSystem::with_policy(alpha, &TruncationPolicy::Adaptive { tail_eps }).map_err(js)?;
    let rho = match pair {
        "AR" => system.rho_ar(),
        "AAntiR" => system.rho_a_antir(),
        other => return Err(JsError::new(&format!("unknown pair {other:?}"))),
    };
    let tol = &config.tolerances;
    let s_marginal = unmeasured_marginal(&rho).and_then(|m| m.entropy(tol)).map_err(js)?;
    let kernel = MeasurementKernel::new(&rho).map_err(js)?;

    let step = (step_deg as f64).to_radians();
    let (rows, cols) = (180 / step_deg + 1, 360 / step_deg + 1);
    let mut out = Vec::with_capacity((rows * cols) as usize);
    for i in 0..rows {
        for j in 0..cols {
            let x = MeasurementDirection::new(i as f64 * step, j as f64 * step);
            out.push(s_marginal - kernel.conditional_entropy(&x, tol).map_err(js)?);
        }
    }
    Ok(out)
}

/// Names accepted by [`figure`].
#[wasm_bindgen]
pub fn figure_names() -> Vec<String> {
    Figure::ALL.iter().map(|f| f.name().to_string()).collect()
}

/// SVG of figure `name` over `steps` points in `[0, alpha_max]`.
#[wasm_bindgen]
pub fn figure(name: &str, alpha_max: f64, steps: usize) -> Result<String, JsError> {
    let figure = Figure::from_name(name).ok_or_else(|| JsError::new(&format!("unknown figure {name:?}")))?;
    let axis = SweepAxis::Squeezing { alpha_min: 0.0, alpha_max, steps };
    let config = PipelineConfig::default();
    let records = axis
        .alphas()
        .map_err(js)?
        .into_iter()
        .map(|a| assemble_record(a, &config))
        .collect::<rindler_corr::Result<Vec<_>>>()
        .map_err(js)?;
    Ok(render_figure(figure, &records))
}
