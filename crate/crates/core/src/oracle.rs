//! Independent reference computations used to validate the main pipeline.
//!
//! The closed-form Rindler-basis series for the bipartite states are
//! evaluated term by term, the measurement optimization is replaced by an
//! exhaustive angular grid through the generic measurement path, and the
//! truncation tails are summed directly.

use std::collections::BTreeMap;

use crate::correlations::{conditional_entropy_after_measurement, unmeasured_marginal, MeasurementDirection};
use crate::error::{Error, Result};
use crate::fockla::{BasisLabel, DensityMatrix, Subsystem, Tolerances};
use crate::states::{Branch, SqueezingParameter};

/// Real matrix given by its nonzero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMatrix {
    pub basis: BasisLabel,
    pub entries: BTreeMap<(usize, usize), f64>,
}

/// Series terms collected per pair of branches: group `0` holds the vacuum
/// kets, group `1` the one-particle kets.
struct SeriesBuilder {
    basis: BasisLabel,
    blocks: [[BTreeMap<(usize, usize), f64>; 2]; 2],
}

impl SeriesBuilder {
    fn new(basis: BasisLabel) -> Self {
        SeriesBuilder { basis, blocks: Default::default() }
    }

    /// Adds `w |ket⟩⟨bra|` when both kets lie inside the truncated basis.
    fn add(&mut self, groups: (usize, usize), ket: &[usize], bra: &[usize], w: f64) {
        if w == 0.0 {
            return;
        }
        if let (Ok(i), Ok(j)) = (self.basis.index_of(ket), self.basis.index_of(bra)) {
            *self.blocks[groups.0][groups.1].entry((i, j)).or_default() += w;
        }
    }

    /// Rescales each branch to weight ½, the same convention as the truncated
    /// state vector, with the cross blocks scaled by the geometric mean.
    fn finish(self) -> SeriesMatrix {
        let trace =
            |b: &BTreeMap<(usize, usize), f64>| -> f64 { b.iter().filter(|((i, j), _)| i == j).map(|(_, w)| w).sum() };
        let t = [trace(&self.blocks[0][0]), trace(&self.blocks[1][1])];
        let mut entries = BTreeMap::new();
        for (g, row) in self.blocks.iter().enumerate() {
            for (h, block) in row.iter().enumerate() {
                let scale = 0.5 / (t[g] * t[h]).sqrt();
                for (&k, &w) in block {
                    *entries.entry(k).or_default() += w * scale;
                }
            }
        }
        SeriesMatrix { basis: self.basis, entries }
    }
}

impl SeriesMatrix {
    pub fn trace(&self) -> f64 {
        self.entries.iter().filter(|((i, j), _)| i == j).map(|(_, w)| w).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0.0)
    }

    /// Largest `|self - rho|` over the union of both supports.
    pub fn max_deviation(&self, rho: &DensityMatrix) -> Result<f64> {
        if &self.basis != rho.basis() {
            return Err(Error::Dimension(format!("bases differ: {} vs {}", self.basis, rho.basis())));
        }
        let other = rho.entries();
        let mut worst: f64 = 0.0;
        for (&(i, j), &w) in &self.entries {
            let z = other.get(&(i, j)).copied().unwrap_or_default();
            worst = worst.max((z.re - w).abs()).max(z.im.abs());
        }
        for (&(i, j), z) in &other {
            if !self.entries.contains_key(&(i, j)) {
                worst = worst.max(z.norm());
            }
        }
        Ok(worst)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.basis.total_dim();
        let mut m = vec![vec![0.0; n]; n];
        for (&(i, j), &w) in &self.entries {
            m[i][j] = w;
        }
        m
    }
}

fn ladder(alpha: SqueezingParameter) -> (f64, f64) {
    (alpha.tanh(), alpha.cosh())
}

/// `ρ_AR = 1/(2C²) Σ_n t^{2n} [ |0n⟩⟨0n| + (n+1)/C² |1,n+1⟩⟨1,n+1|
///        + √(n+1)/C (|0n⟩⟨1,n+1| + h.c.) ]`, with `t = tanh α`, `C = cosh α`.
pub fn rho_ar_series(alpha: SqueezingParameter, n_max: usize) -> SeriesMatrix {
    let (t, c) = ladder(alpha);
    let basis = BasisLabel::new(vec![(Subsystem::Alice, 2), (Subsystem::Rob, n_max + 2)]).unwrap();
    let mut m = SeriesBuilder::new(basis);
    let pre = 1.0 / (2.0 * c * c);
    for n in 0..=n_max {
        let w = pre * t.powi(2 * n as i32);
        let root = ((n + 1) as f64).sqrt();
        m.add((0, 0), &[0, n], &[0, n], w);
        m.add((1, 1), &[1, n + 1], &[1, n + 1], w * (n + 1) as f64 / (c * c));
        m.add((0, 1), &[0, n], &[1, n + 1], w * root / c);
        m.add((1, 0), &[1, n + 1], &[0, n], w * root / c);
    }
    m.finish()
}

/// `ρ_AR̄ = 1/(2C²) Σ_n t^{2n} [ |0n⟩⟨0n| + (n+1)/C² |1n⟩⟨1n|
///        + √(n+1) t/C (|0,n+1⟩⟨1n| + h.c.) ]`.
pub fn rho_a_antir_series(alpha: SqueezingParameter, n_max: usize) -> SeriesMatrix {
    let (t, c) = ladder(alpha);
    let basis = BasisLabel::new(vec![(Subsystem::Alice, 2), (Subsystem::AntiRob, n_max + 1)]).unwrap();
    let mut m = SeriesBuilder::new(basis);
    let pre = 1.0 / (2.0 * c * c);
    for n in 0..=n_max {
        let w = pre * t.powi(2 * n as i32);
        let cross = w * ((n + 1) as f64).sqrt() * t / c;
        m.add((0, 0), &[0, n], &[0, n], w);
        m.add((1, 1), &[1, n], &[1, n], w * (n + 1) as f64 / (c * c));
        m.add((0, 1), &[0, n + 1], &[1, n], cross);
        m.add((1, 0), &[1, n], &[0, n + 1], cross);
    }
    m.finish()
}

/// `ρ_RR̄ = 1/(2C²) Σ_{n,m} t^{n+m} ( |nn⟩⟨mm|
///        + √(n+1)√(m+1)/C² |n+1,n⟩⟨m+1,m| )`.
pub fn rho_r_antir_series(alpha: SqueezingParameter, n_max: usize) -> SeriesMatrix {
    let (t, c) = ladder(alpha);
    let basis = BasisLabel::new(vec![(Subsystem::Rob, n_max + 2), (Subsystem::AntiRob, n_max + 1)]).unwrap();
    let mut m = SeriesBuilder::new(basis);
    let pre = 1.0 / (2.0 * c * c);
    let powers: Vec<f64> = (0..=2 * n_max).map(|k| t.powi(k as i32)).collect();
    for n in 0..=n_max {
        for k in 0..=n_max {
            let w = pre * powers[n + k];
            m.add((0, 0), &[n, n], &[k, k], w);
            m.add((1, 1), &[n + 1, n], &[k + 1, k], w * (((n + 1) * (k + 1)) as f64).sqrt() / (c * c));
        }
    }
    m.finish()
}

/// `J` maximized over a uniform `(θ, φ)` grid with the given spacing in
/// degrees, covering the upper half-sphere (directions `x` and `−x` define
/// the same measurement).
pub fn grid_search_j(
    rho: &DensityMatrix,
    resolution_deg: u32,
    tol: &Tolerances,
) -> Result<(f64, MeasurementDirection)> {
    if resolution_deg == 0 || 180 % resolution_deg != 0 {
        return Err(Error::InvalidParameter(format!("grid resolution {resolution_deg} does not divide 180")));
    }
    let s_b = unmeasured_marginal(rho)?.entropy(tol)?;
    let step = (resolution_deg as f64).to_radians();
    let mut best = (f64::INFINITY, MeasurementDirection::Z);
    for i in 0..=90 / resolution_deg {
        let phis = if i == 0 { 1 } else { 360 / resolution_deg };
        for k in 0..phis {
            let x = MeasurementDirection::new(i as f64 * step, k as f64 * step);
            let h = conditional_entropy_after_measurement(rho, &x, tol)?;
            if h < best.0 {
                best = (h, x);
            }
        }
    }
    Ok((s_b - best.0, best.1))
}

/// Discarded weight of the levels past `n` in a renormalized branch.
pub fn tail_weight(alpha: SqueezingParameter, n: usize, branch: Branch) -> f64 {
    let x = alpha.tanh().powi(2);
    let head = x.powi(n as i32 + 1);
    match branch {
        Branch::Vacuum => head,
        Branch::OneParticle => head * (1.0 + (n + 1) as f64 * (1.0 - x)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_abs_diff_eq;

    fn half() -> SqueezingParameter {
        SqueezingParameter::new(0.5 * 3f64.ln()).unwrap()
    }

    #[test]
    fn series_at_zero_squeezing() {
        let z = SqueezingParameter::new(0.0).unwrap();
        let ar = rho_ar_series(z, 3);
        let w = 5;
        for (i, j) in [(0, 0), (0, w + 1), (w + 1, 0), (w + 1, w + 1)] {
            assert_abs_diff_eq!(ar.get(i, j), 0.5, epsilon = 1e-15);
        }
        assert_eq!(ar.entries.len(), 4);
        assert_abs_diff_eq!(rho_a_antir_series(z, 3).get(4, 4), 0.5, epsilon = 1e-15);
        let rr = rho_r_antir_series(z, 3);
        assert_abs_diff_eq!(rr.get(0, 0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rr.get(4, 4), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn series_match_partial_traces() {
        let a = half();
        let n = 12;
        let d = rho_ar_series(a, n).max_deviation(&states::rho_ar(a, n)).unwrap();
        assert!(d < 1e-12, "{d}");
        assert!(rho_a_antir_series(a, n).max_deviation(&states::rho_a_antir(a, n)).unwrap() < 1e-12);
        assert!(rho_r_antir_series(a, n).max_deviation(&states::rho_r_antir(a, n)).unwrap() < 1e-12);
        assert_abs_diff_eq!(rho_ar_series(a, n).trace(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn first_terms_of_rho_ar_at_half() {
        // untruncated values: 1/(2C²) = 3/8, t = 1/2, C = 2/√3
        let a = half();
        let m = rho_ar_series(a, 60);
        let w = 62;
        let c2 = 4.0 / 3.0;
        for n in 0..=3usize {
            let tn = 0.25f64.powi(n as i32) * 0.375;
            assert_abs_diff_eq!(m.get(n, n), tn, epsilon = 1e-13);
            assert_abs_diff_eq!(m.get(w + n + 1, w + n + 1), tn * (n + 1) as f64 / c2, epsilon = 1e-13);
            assert_abs_diff_eq!(m.get(n, w + n + 1), tn * ((n + 1) as f64).sqrt() / c2.sqrt(), epsilon = 1e-13);
        }
    }

    #[test]
    fn rho_r_antir_series_has_rank_two() {
        let m = rho_r_antir_series(SqueezingParameter::new(0.9).unwrap(), 4);
        let dense = m.to_dense();
        let n = dense.len();
        let flat: Vec<f64> = dense.into_iter().flatten().collect();
        let eig = crate::fockla::jacobi_eigen(&flat, n, false).unwrap().values;
        assert_eq!(eig.iter().filter(|v| v.abs() > 1e-12).count(), 2);
    }

    #[test]
    fn grid_search_examples() {
        let tol = Tolerances::default();
        let basis = BasisLabel::new(vec![(Subsystem::Alice, 2), (Subsystem::Rob, 2)]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DensityMatrix::outer(
            &crate::fockla::PureStateVector::from_dense(basis.clone(), &[h, 0.0, 0.0, h]).unwrap(),
        );
        assert_abs_diff_eq!(grid_search_j(&bell, 15, &tol).unwrap().0, 1.0, epsilon = 1e-12);
        let product = DensityMatrix::from_diagonal(basis, &[0.3, 0.2, 0.3, 0.2]).unwrap();
        assert_abs_diff_eq!(grid_search_j(&product, 30, &tol).unwrap().0, 0.0, epsilon = 1e-12);
        assert!(grid_search_j(&product, 7, &tol).is_err());
    }

    /// Normalized branch weights past `n`, summed until they stop changing.
    fn summed_tail(alpha: SqueezingParameter, n: usize, branch: Branch) -> f64 {
        let x = alpha.tanh().powi(2);
        let mut total = 0.0;
        let mut k = n + 1;
        loop {
            let w = match branch {
                Branch::Vacuum => (1.0 - x) * x.powi(k as i32),
                Branch::OneParticle => (1.0 - x).powi(2) * (k + 1) as f64 * x.powi(k as i32),
            };
            let next = total + w;
            if next == total {
                return total;
            }
            total = next;
            k += 1;
        }
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_weight(SqueezingParameter::new(0.0).unwrap(), 5, Branch::Vacuum), 0.0);
        assert_eq!(tail_weight(SqueezingParameter::new(0.0).unwrap(), 5, Branch::OneParticle), 0.0);
        assert_abs_diff_eq!(tail_weight(half(), 10, Branch::Vacuum), 0.25f64.powi(11), epsilon = 1e-20);
        assert_abs_diff_eq!(tail_weight(half(), 10, Branch::Vacuum), 2.384e-7, epsilon = 1e-10);
        for alpha in [0.3, 0.549306, 1.0, 2.0] {
            let a = SqueezingParameter::new(alpha).unwrap();
            for n in [1, 10, 40] {
                for b in [Branch::Vacuum, Branch::OneParticle] {
                    let want = summed_tail(a, n, b);
                    assert!((tail_weight(a, n, b) - want).abs() <= 1e-12 * want.max(1e-300));
                }
            }
        }
    }

    #[test]
    fn tail_is_strictly_decreasing() {
        for alpha in [0.2, 1.0, 2.5] {
            let a = SqueezingParameter::new(alpha).unwrap();
            for b in [Branch::Vacuum, Branch::OneParticle] {
                for n in 1..200 {
                    assert!(tail_weight(a, n + 1, b) < tail_weight(a, n, b));
                }
            }
        }
    }

    #[test]
    fn required_truncation_agrees_with_tails() {
        for alpha in [0.25, 0.549306, 1.0, 2.0, 3.0] {
            let a = SqueezingParameter::new(alpha).unwrap();
            let n = states::required_truncation(a, 1e-12).unwrap();
            let fits = |m| tail_weight(a, m, Branch::Vacuum) < 1e-12 && tail_weight(a, m, Branch::OneParticle) < 1e-12;
            assert!(fits(n));
            assert!(n == 1 || !fits(n - 1));
        }
    }
}
