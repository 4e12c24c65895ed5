//! Derivative-free Nelder–Mead simplex minimization.

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadSettings {
    /// Stop once `max f - min f` over the simplex falls below this.
    pub f_tol: f64,
    /// Stop once every vertex lies within this distance of the best one.
    pub x_tol: f64,
    pub max_evaluations: usize,
}

impl Default for NelderMeadSettings {
    fn default() -> Self {
        NelderMeadSettings { f_tol: 1e-11, x_tol: 1e-9, max_evaluations: 400 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` from an axis-aligned start simplex `x0 + step_i e_i`.
///
/// Uses the standard coefficients (reflection 1, expansion 2, contraction ½,
/// shrink ½). Ties are broken by vertex order, so the run is deterministic.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], steps: &[f64], settings: &NelderMeadSettings) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let n = x0.len();
    assert_eq!(steps.len(), n, "one initial step per coordinate");
    let mut evaluations = 0;
    let mut eval = |x: &[f64], count: &mut usize| -> Result<f64> {
        *count += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evaluations)?));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += steps[i];
        let fx = eval(&x, &mut evaluations)?;
        simplex.push((x, fx));
    }

    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(a, b)| a + t * (b - a)).collect() };

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= settings.f_tol || size <= settings.x_tol {
            return Ok(Minimum { x: simplex[0].0.clone(), f: simplex[0].1, evaluations, converged: true });
        }
        if evaluations >= settings.max_evaluations {
            return Ok(Minimum { x: simplex[0].0.clone(), f: simplex[0].1, evaluations, converged: false });
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();

        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = eval(&reflected, &mut evaluations)?;
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = eval(&expanded, &mut evaluations)?;
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }

        let (contracted, fc) = if fr < worst.1 {
            let x = lerp(&centroid, &reflected, 0.5);
            let fx = eval(&x, &mut evaluations)?;
            (x, fx)
        } else {
            let x = lerp(&centroid, &worst.0, 0.5);
            let fx = eval(&x, &mut evaluations)?;
            (x, fx)
        };
        if fc < fr.min(worst.1) {
            simplex[n] = (contracted, fc);
            continue;
        }

        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = lerp(&best, &vertex.0, 0.5);
            let fx = eval(&x, &mut evaluations)?;
            *vertex = (x, fx);
        }
    }
}
