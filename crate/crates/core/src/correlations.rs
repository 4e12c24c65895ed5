//! Mutual information, classical correlations under projective measurements
//! on Alice's qubit, quantum discord and entanglement of formation between
//! the wedges.
//!
//! A direction `x` on the Bloch sphere defines the projectors
//! `Π_±(x) = ½(1 ± x·σ)` onto `|+⟩ = (cos θ/2, e^{iφ} sin θ/2)` and
//! `|−⟩ = (sin θ/2, −e^{iφ} cos θ/2)`. Writing each branch of `ρ_AB` as
//! `|0⟩|φ_{j,0}⟩ + |1⟩|φ_{j,1}⟩`, the unnormalized post-measurement state of
//! `B` for outcome `λ` has branches `Σ_a conj(λ_a) |φ_{j,a}⟩`, and its spectrum
//! is the spectrum of the Gram matrix
//! `G_jk = Σ_{a,a'} λ_a conj(λ_{a'}) ⟨φ_{j,a}|φ_{k,a'}⟩`.
//! [`MeasurementKernel`] precomputes the four overlap matrices once, so each
//! trial direction costs one small Hermitian eigenproblem per outcome.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fockla::{
    BasisLabel, DensityMatrix, FactorSplit, SparseVector, SpectralLayout, Spectrum, Subsystem, Tolerances,
};
use crate::optimize::{nelder_mead, NelderMeadSettings};
use crate::states::{required_truncation, RindlerSystem, SqueezingParameter, TruncationPolicy};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Unit vector on the Bloch sphere, `x = (sin θ cos φ, sin θ sin φ, cos θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDirection {
    theta: f64,
    phi: f64,
}

impl MeasurementDirection {
    pub const Z: MeasurementDirection = MeasurementDirection { theta: 0.0, phi: 0.0 };
    pub const X: MeasurementDirection = MeasurementDirection { theta: std::f64::consts::FRAC_PI_2, phi: 0.0 };

    /// Any real angles; stored canonically with `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > std::f64::consts::PI {
            theta = TAU - theta;
            phi += std::f64::consts::PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        MeasurementDirection { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Eigenvectors of `x·σ` for `+1` and `−1`.
    pub fn eigenvectors(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let phase = Complex64::from_polar(1.0, self.phi);
        [[Complex64::new(c, 0.0), phase * s], [Complex64::new(s, 0.0), -phase * c]]
    }
}

/// One outcome of a projective measurement on Alice.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub probability: f64,
    /// Normalized state of the unmeasured factors; left unnormalized when the
    /// outcome is degenerate.
    pub post_state: DensityMatrix,
    /// Probability below `τ_norm`; such outcomes contribute no entropy.
    pub degenerate: bool,
}

fn alice_split(basis: &BasisLabel) -> Result<(FactorSplit, BasisLabel)> {
    if !basis.contains(Subsystem::Alice) {
        return Err(Error::NoQubitFactor);
    }
    if basis.len() < 2 {
        return Err(Error::NotBipartite(basis.len()));
    }
    let rest: Vec<Subsystem> = basis.factors().iter().map(|&(id, _)| id).filter(|&id| id != Subsystem::Alice).collect();
    Ok((FactorSplit::new(basis, &rest), basis.restrict(&rest)?))
}

/// State of the unmeasured factors.
pub fn unmeasured_marginal(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let (_, rest) = alice_split(rho.basis())?;
    let keep: Vec<Subsystem> = rest.factors().iter().map(|&(id, _)| id).collect();
    rho.partial_trace(&keep)
}

/// Applies `Π_±(x) ⊗ 1` and traces Alice out.
pub fn measure_alice(
    rho: &DensityMatrix,
    x: &MeasurementDirection,
    tol: &Tolerances,
) -> Result<(MeasurementOutcome, MeasurementOutcome)> {
    let (split, rest) = alice_split(rho.basis())?;
    let [plus, minus] = x.eigenvectors();
    let outcome = |lambda: [Complex64; 2]| -> Result<MeasurementOutcome> {
        let branches = rho
            .branches()
            .iter()
            .map(|b| {
                SparseVector::from_pairs(
                    b.entries()
                        .iter()
                        .map(|&(flat, amp)| {
                            let (kept, a) = split.split(flat);
                            (kept, lambda[a].conj() * amp)
                        })
                        .collect(),
                )
            })
            .collect();
        let unnormalized = DensityMatrix::from_branches(rest.clone(), branches)?;
        let probability = unnormalized.trace();
        if probability < tol.norm {
            return Ok(MeasurementOutcome { probability, post_state: unnormalized, degenerate: true });
        }
        Ok(MeasurementOutcome { probability, post_state: unnormalized.scaled(1.0 / probability), degenerate: false })
    };
    Ok((outcome(plus)?, outcome(minus)?))
}

/// `Σ_± p_± S(ρ_B^±)` in bits, through the generic measurement path.
pub fn conditional_entropy_after_measurement(
    rho: &DensityMatrix,
    x: &MeasurementDirection,
    tol: &Tolerances,
) -> Result<f64> {
    let (plus, minus) = measure_alice(rho, x, tol)?;
    let mut h = 0.0;
    for o in [plus, minus] {
        if !o.degenerate {
            h += o.probability * o.post_state.entropy(tol)?;
        }
    }
    Ok(h)
}

/// Overlap matrices of a bipartite state, prepared for repeated evaluation of
/// the post-measurement conditional entropy.
#[derive(Clone, Debug)]
pub struct MeasurementKernel {
    layout: SpectralLayout,
    /// `[Q^{00}, Q^{01}, Q^{10}, Q^{11}]` at each pattern position.
    overlaps: Vec<[Complex64; 4]>,
    diagonal: Vec<usize>,
    rest_dim: usize,
}

impl MeasurementKernel {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        let (split, rest) = alice_split(rho.basis())?;
        let mut entries: Vec<(usize, usize, usize, Complex64)> = Vec::new();
        for (j, b) in rho.branches().iter().enumerate() {
            for &(flat, amp) in b.entries() {
                let (kept, a) = split.split(flat);
                entries.push((kept, j, a, amp));
            }
        }
        entries.sort_by_key(|&(kept, j, a, _)| (kept, j, a));

        let mut acc: BTreeMap<(usize, usize), [Complex64; 4]> = BTreeMap::new();
        for run in entries.chunk_by(|x, y| x.0 == y.0) {
            for &(_, j, a, u) in run {
                for &(_, k, b, v) in run {
                    if j <= k {
                        acc.entry((j, k)).or_default()[2 * a + b] += u.conj() * v;
                    }
                }
            }
        }

        let pattern: Vec<(usize, usize)> = acc.keys().copied().collect();
        let diagonal = pattern.iter().enumerate().filter(|(_, (j, k))| j == k).map(|(i, _)| i).collect();
        Ok(MeasurementKernel {
            layout: SpectralLayout::new(rho.branches().len(), &pattern)?,
            overlaps: acc.into_values().collect(),
            diagonal,
            rest_dim: rest.total_dim(),
        })
    }

    /// Outcome probability and entropy of the post-measurement state for the
    /// projector onto `lambda`.
    fn outcome(&self, lambda: [Complex64; 2], tol: &Tolerances) -> Result<Option<(f64, Spectrum)>> {
        let pi = [
            lambda[0] * lambda[0].conj(),
            lambda[0] * lambda[1].conj(),
            lambda[1] * lambda[0].conj(),
            lambda[1] * lambda[1].conj(),
        ];
        let values: Vec<Complex64> =
            self.overlaps.iter().map(|q| q[0] * pi[0] + q[1] * pi[1] + q[2] * pi[2] + q[3] * pi[3]).collect();
        let p: f64 = self.diagonal.iter().map(|&i| values[i].re).sum();
        if p < tol.norm {
            return Ok(None);
        }
        let mut mu = self.layout.eigenvalues(&values)?;
        for m in &mut mu {
            *m /= p;
        }
        Ok(Some((p, Spectrum::from_raw(mu, self.rest_dim, tol)?)))
    }

    pub fn probabilities(&self, x: &MeasurementDirection, tol: &Tolerances) -> Result<[f64; 2]> {
        let [plus, minus] = x.eigenvectors();
        let p = |l| self.outcome(l, tol).map(|o| o.map_or(0.0, |(p, _)| p));
        Ok([p(plus)?, p(minus)?])
    }

    pub fn conditional_entropy(&self, x: &MeasurementDirection, tol: &Tolerances) -> Result<f64> {
        let [plus, minus] = x.eigenvectors();
        let mut h = 0.0;
        for lambda in [plus, minus] {
            if let Some((p, spectrum)) = self.outcome(lambda, tol)? {
                h += p * spectrum.entropy();
            }
        }
        Ok(h)
    }
}

/// Search schedule for the measurement optimization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    /// Polar rings of the coarse grid between the pole and the equator.
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub f_tol: f64,
    pub x_tol: f64,
    pub max_evaluations: usize,
    /// Tail budget of the cheaper state used to locate the optimum; the final
    /// value is evaluated on the full truncation. `None` searches on the full
    /// state.
    pub search_tail_eps: Option<f64>,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            theta_steps: 4,
            phi_steps: 8,
            f_tol: 1e-11,
            x_tol: 1e-9,
            max_evaluations: 400,
            search_tail_eps: Some(1e-6),
        }
    }
}

/// Minimum of the conditional entropy over the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchResult {
    pub direction: MeasurementDirection,
    pub conditional_entropy: f64,
    pub evaluations: usize,
}

/// Coarse grid over the upper half-sphere (the lower half repeats it with the
/// outcomes swapped) followed by Nelder–Mead from the best grid point.
pub fn minimize_conditional_entropy(
    kernel: &MeasurementKernel,
    settings: &OptimizerSettings,
    tol: &Tolerances,
    marginal_entropy: f64,
) -> Result<SearchResult> {
    let theta_steps = settings.theta_steps.max(1);
    let phi_steps = settings.phi_steps.max(1);
    let d_theta = std::f64::consts::FRAC_PI_2 / theta_steps as f64;
    let d_phi = TAU / phi_steps as f64;

    let mut evaluations = 0;
    let mut best = (MeasurementDirection::Z, kernel.conditional_entropy(&MeasurementDirection::Z, tol)?);
    evaluations += 1;
    for i in 1..=theta_steps {
        for k in 0..phi_steps {
            let x = MeasurementDirection::new(i as f64 * d_theta, k as f64 * d_phi);
            let h = kernel.conditional_entropy(&x, tol)?;
            evaluations += 1;
            if h < best.1 {
                best = (x, h);
            }
        }
    }

    let nm =
        NelderMeadSettings { f_tol: settings.f_tol, x_tol: settings.x_tol, max_evaluations: settings.max_evaluations };
    let min = nelder_mead(
        |v| kernel.conditional_entropy(&MeasurementDirection::new(v[0], v[1]), tol),
        &[best.0.theta(), best.0.phi()],
        &[0.5 * d_theta, 0.5 * d_phi],
        &nm,
    )?;
    evaluations += min.evaluations;
    let (direction, h) = if min.f < best.1 { (MeasurementDirection::new(min.x[0], min.x[1]), min.f) } else { best };
    if !min.converged {
        return Err(Error::OptimizerNonConvergence {
            evaluations,
            best_j: marginal_entropy - h,
            theta: direction.theta(),
            phi: direction.phi(),
        });
    }
    Ok(SearchResult { direction, conditional_entropy: h, evaluations })
}

/// Classical correlations `J = S(ρ_B) − min_x Σ p_± S(ρ_B^±)` with the
/// measurement on Alice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalCorrelation {
    pub j: f64,
    pub direction: MeasurementDirection,
    pub conditional_entropy: f64,
    pub evaluations: usize,
}

pub fn classical_correlations(
    rho: &DensityMatrix,
    settings: &OptimizerSettings,
    tol: &Tolerances,
) -> Result<ClassicalCorrelation> {
    let s_b = unmeasured_marginal(rho)?.entropy(tol)?;
    let kernel = MeasurementKernel::new(rho)?;
    let found = minimize_conditional_entropy(&kernel, settings, tol, s_b)?;
    Ok(ClassicalCorrelation {
        j: s_b - found.conditional_entropy,
        direction: found.direction,
        conditional_entropy: found.conditional_entropy,
        evaluations: found.evaluations,
    })
}

/// Locates the optimal direction on `search` and evaluates `J` on `target`,
/// which must describe the same state at a finer truncation.
pub fn classical_correlations_staged(
    search: &DensityMatrix,
    target: &DensityMatrix,
    target_marginal_entropy: f64,
    settings: &OptimizerSettings,
    tol: &Tolerances,
) -> Result<ClassicalCorrelation> {
    let found = minimize_conditional_entropy(&MeasurementKernel::new(search)?, settings, tol, target_marginal_entropy)?;
    let h = MeasurementKernel::new(target)?.conditional_entropy(&found.direction, tol)?;
    Ok(ClassicalCorrelation {
        j: target_marginal_entropy - h,
        direction: found.direction,
        conditional_entropy: h,
        evaluations: found.evaluations + 1,
    })
}

fn bipartite_parts(rho: &DensityMatrix) -> Result<(Subsystem, Subsystem)> {
    match rho.basis().factors() {
        [(a, _), (b, _)] => Ok((*a, *b)),
        f => Err(Error::NotBipartite(f.len())),
    }
}

/// `I = S(ρ_A) + S(ρ_B) − S(ρ_AB)` in bits.
pub fn mutual_information(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    let (a, b) = bipartite_parts(rho)?;
    Ok(rho.partial_trace(&[a])?.entropy(tol)? + rho.partial_trace(&[b])?.entropy(tol)? - rho.entropy(tol)?)
}

/// `D = I − J` with the measurement on Alice.
pub fn discord(rho: &DensityMatrix, settings: &OptimizerSettings, tol: &Tolerances) -> Result<f64> {
    bipartite_parts(rho)?;
    Ok(mutual_information(rho, tol)? - classical_correlations(rho, settings, tol)?.j)
}

/// Koashi–Winter: for a pure tripartite state,
/// `E_F(ρ_RR̄) = S(ρ_R) − J(ρ_AR)` with Alice measured.
pub fn entanglement_of_formation_kw(s_r: f64, j_ar: f64) -> f64 {
    s_r - j_ar
}

/// Counters of tolerated numerical artifacts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `J`, `D` or `E_F` values in `[-clamp_tol, 0)` set to zero.
    pub clamped_quantities: usize,
    /// Reported spectra with eigenvalues in `[-τ_psd, 0)` set to zero.
    pub clamped_eigenvalues: usize,
    pub optimizer_evaluations: usize,
}

impl Diagnostics {
    pub fn merge(&mut self, other: &Diagnostics) {
        self.clamped_quantities += other.clamped_quantities;
        self.clamped_eigenvalues += other.clamped_eigenvalues;
        self.optimizer_evaluations += other.optimizer_evaluations;
    }
}

/// Everything that determines a record besides `α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub truncation: TruncationPolicy,
    pub tolerances: Tolerances,
    pub optimizer: OptimizerSettings,
    pub clamp_tol: f64,
    pub route_tol: f64,
    pub conservation_tol: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            truncation: TruncationPolicy::default(),
            tolerances: Tolerances::default(),
            optimizer: OptimizerSettings::default(),
            clamp_tol: 1e-6,
            route_tol: 1e-5,
            conservation_tol: 1e-6,
        }
    }
}

/// All correlation measures at one squeezing parameter, in bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    pub alpha: f64,
    #[serde(rename = "S_A")]
    pub s_a: f64,
    #[serde(rename = "S_R")]
    pub s_r: f64,
    #[serde(rename = "S_AntiR")]
    pub s_antir: f64,
    #[serde(rename = "I_AR")]
    pub i_ar: f64,
    #[serde(rename = "I_AAntiR")]
    pub i_aantir: f64,
    #[serde(rename = "I_RAntiR")]
    pub i_rantir: f64,
    #[serde(rename = "J_AR")]
    pub j_ar: f64,
    #[serde(rename = "J_AAntiR")]
    pub j_aantir: f64,
    #[serde(rename = "D_AR")]
    pub d_ar: f64,
    #[serde(rename = "D_AAntiR")]
    pub d_aantir: f64,
    /// Through `S_R − J_AR`.
    #[serde(rename = "EF_RAntiR")]
    pub ef_rantir: f64,
    /// Through `S_AntiR − J_AAntiR`.
    #[serde(rename = "EF_RAntiR_alt")]
    pub ef_rantir_alt: f64,
    #[serde(rename = "S_AR")]
    pub s_ar: f64,
    #[serde(rename = "S_AAntiR")]
    pub s_aantir: f64,
    #[serde(rename = "S_RAntiR")]
    pub s_rantir: f64,
    #[serde(rename = "N_used")]
    pub n_used: usize,
    #[serde(rename = "theta_AR")]
    pub theta_ar: f64,
    #[serde(rename = "phi_AR")]
    pub phi_ar: f64,
    #[serde(rename = "theta_AAntiR")]
    pub theta_aantir: f64,
    #[serde(rename = "phi_AAntiR")]
    pub phi_aantir: f64,
}

impl CorrelationRecord {
    /// Correlation measures and entropies, excluding `α`, `N` and the angles.
    pub fn measures(&self) -> [(&'static str, f64); 15] {
        [
            ("S_A", self.s_a),
            ("S_R", self.s_r),
            ("S_AntiR", self.s_antir),
            ("I_AR", self.i_ar),
            ("I_AAntiR", self.i_aantir),
            ("I_RAntiR", self.i_rantir),
            ("J_AR", self.j_ar),
            ("J_AAntiR", self.j_aantir),
            ("D_AR", self.d_ar),
            ("D_AAntiR", self.d_aantir),
            ("EF_RAntiR", self.ef_rantir),
            ("EF_RAntiR_alt", self.ef_rantir_alt),
            ("S_AR", self.s_ar),
            ("S_AAntiR", self.s_aantir),
            ("S_RAntiR", self.s_rantir),
        ]
    }
}

fn clamp_nonnegative(quantity: &'static str, value: f64, tol: f64, diag: &mut Diagnostics) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -tol {
        diag.clamped_quantities += 1;
        Ok(0.0)
    } else {
        Err(Error::NegativeQuantity { quantity, value })
    }
}

fn entropy_counted(rho: &DensityMatrix, tol: &Tolerances, diag: &mut Diagnostics) -> Result<f64> {
    let s = rho.spectrum(tol)?;
    diag.clamped_eigenvalues += s.clamped();
    Ok(s.entropy())
}

pub fn assemble_record(alpha: SqueezingParameter, config: &PipelineConfig) -> Result<CorrelationRecord> {
    assemble_record_with_diagnostics(alpha, config).map(|(r, _)| r)
}

pub fn assemble_record_with_diagnostics(
    alpha: SqueezingParameter,
    config: &PipelineConfig,
) -> Result<(CorrelationRecord, Diagnostics)> {
    assemble(alpha, config).map_err(|e| Error::at(alpha.alpha(), e))
}

fn assemble(alpha: SqueezingParameter, config: &PipelineConfig) -> Result<(CorrelationRecord, Diagnostics)> {
    let tol = &config.tolerances;
    let mut diag = Diagnostics::default();
    let n = config.truncation.resolve(alpha)?;
    let system = RindlerSystem::new(alpha, n)?;

    let s_a = entropy_counted(&system.rho_a(), tol, &mut diag)?;
    let s_r = entropy_counted(&system.rho_r(), tol, &mut diag)?;
    let s_antir = entropy_counted(&system.rho_antir(), tol, &mut diag)?;
    let rho_ar = system.rho_ar();
    let rho_aantir = system.rho_a_antir();
    let s_ar = entropy_counted(&rho_ar, tol, &mut diag)?;
    let s_aantir = entropy_counted(&rho_aantir, tol, &mut diag)?;
    let s_rantir = entropy_counted(&system.rho_r_antir(), tol, &mut diag)?;

    let i_ar = s_a + s_r - s_ar;
    let i_aantir = s_a + s_antir - s_aantir;
    let i_rantir = s_r + s_antir - s_rantir;
    if (i_ar + i_aantir - 2.0 * s_a).abs() > config.conservation_tol {
        return Err(Error::Conservation { sum: i_ar + i_aantir, expected: 2.0 * s_a });
    }

    let proxy_n =
        config.optimizer.search_tail_eps.and_then(|eps| required_truncation(alpha, eps).ok()).map_or(n, |m| m.min(n));
    let proxy = if proxy_n < n { Some(RindlerSystem::new(alpha, proxy_n)?) } else { None };
    let (search_ar, search_aantir) = match &proxy {
        Some(p) => (p.rho_ar(), p.rho_a_antir()),
        None => (rho_ar.clone(), rho_aantir.clone()),
    };
    let cc_ar = classical_correlations_staged(&search_ar, &rho_ar, s_r, &config.optimizer, tol)?;
    let cc_aantir = classical_correlations_staged(&search_aantir, &rho_aantir, s_antir, &config.optimizer, tol)?;
    diag.optimizer_evaluations += cc_ar.evaluations + cc_aantir.evaluations;

    let j_ar = clamp_nonnegative("J_AR", cc_ar.j, config.clamp_tol, &mut diag)?;
    let j_aantir = clamp_nonnegative("J_AAntiR", cc_aantir.j, config.clamp_tol, &mut diag)?;
    let d_ar = clamp_nonnegative("D_AR", i_ar - j_ar, config.clamp_tol, &mut diag)?;
    let d_aantir = clamp_nonnegative("D_AAntiR", i_aantir - j_aantir, config.clamp_tol, &mut diag)?;
    let ef = clamp_nonnegative("EF_RAntiR", entanglement_of_formation_kw(s_r, j_ar), config.clamp_tol, &mut diag)?;
    let ef_alt = clamp_nonnegative(
        "EF_RAntiR_alt",
        entanglement_of_formation_kw(s_antir, j_aantir),
        config.clamp_tol,
        &mut diag,
    )?;
    if (ef - ef_alt).abs() > config.route_tol {
        return Err(Error::RouteMismatch { via_rob: ef, via_antirob: ef_alt });
    }

    let record = CorrelationRecord {
        alpha: alpha.alpha(),
        s_a,
        s_r,
        s_antir,
        i_ar,
        i_aantir,
        i_rantir,
        j_ar,
        j_aantir,
        d_ar,
        d_aantir,
        ef_rantir: ef,
        ef_rantir_alt: ef_alt,
        s_ar,
        s_aantir,
        s_rantir,
        n_used: n,
        theta_ar: cc_ar.direction.theta(),
        phi_ar: cc_ar.direction.phi(),
        theta_aantir: cc_aantir.direction.theta(),
        phi_aantir: cc_aantir.direction.phi(),
    };
    Ok((record, diag))
}
