//! Truncated Rindler-basis states of a single field mode.
//!
//! The Minkowski vacuum of the mode is the two-mode squeezed state
//! `(1/cosh α) Σ tanhⁿα |n⟩_R |n⟩_R̄`, and the one-particle Unruh excitation is
//! `(1/cosh²α) Σ tanhⁿα √(n+1) |n+1⟩_R |n⟩_R̄`. Alice shares a Bell pair with
//! the mode, so the global state is
//! `(|0⟩_A ⊗ vacuum + |1⟩_A ⊗ one-particle) / √2`.
//!
//! Every bipartite and single-party state is obtained from that vector by
//! partial trace. Both branches are cut at `n = N` and renormalized; Rob's
//! ladder has `N + 2` levels to hold `|N+1⟩`, AntiRob's has `N + 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fockla::{BasisLabel, DensityMatrix, PureStateVector, SparseVector, Subsystem};

/// Largest vacuum-branch cutoff the adaptive policy will accept.
pub const N_MAX_CAP: usize = 16384;

/// Default discarded-weight budget of the adaptive policy.
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;

/// Squeezing parameter `α ≥ 0` with `tanh α = e^{-πω/a}`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SqueezingParameter(f64);

impl SqueezingParameter {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!("squeezing parameter must be finite and >= 0, got {alpha}")));
        }
        Ok(SqueezingParameter(alpha))
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    pub fn tanh(self) -> f64 {
        self.0.tanh()
    }

    pub fn cosh(self) -> f64 {
        self.0.cosh()
    }

    /// Boltzmann ratio `tanh²α` between successive levels of the thermal marginal.
    pub fn level_ratio(self) -> f64 {
        let t = self.tanh();
        t * t
    }
}

/// Field-mode frequency and observer proper acceleration, in natural units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccelerationSpec {
    pub omega: f64,
    pub accel: f64,
}

impl AccelerationSpec {
    pub fn new(omega: f64, accel: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) || !(accel > 0.0 && accel.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega and acceleration must be positive, got omega = {omega}, a = {accel}"
            )));
        }
        Ok(AccelerationSpec { omega, accel })
    }

    /// Unruh temperature `a / 2π`.
    pub fn temperature(&self) -> f64 {
        self.accel / (2.0 * std::f64::consts::PI)
    }
}

/// `α = artanh(e^{-πω/a})`.
pub fn squeezing_from_acceleration(spec: &AccelerationSpec) -> Result<SqueezingParameter> {
    let spec = AccelerationSpec::new(spec.omega, spec.accel)?;
    let t = (-std::f64::consts::PI * spec.omega / spec.accel).exp();
    SqueezingParameter::new(t.atanh())
}

/// How the Fock ladders are cut.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TruncationPolicy {
    /// Vacuum-branch cutoff `N`.
    Fixed(usize),
    /// Smallest `N` whose discarded weight is below `tail_eps` in both branches.
    Adaptive { tail_eps: f64 },
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy::Adaptive { tail_eps: DEFAULT_TAIL_EPS }
    }
}

impl TruncationPolicy {
    pub fn resolve(&self, alpha: SqueezingParameter) -> Result<usize> {
        match *self {
            TruncationPolicy::Fixed(n) if n >= 1 => Ok(n),
            TruncationPolicy::Fixed(n) => Err(Error::InvalidParameter(format!("fixed truncation N = {n} < 1"))),
            TruncationPolicy::Adaptive { tail_eps } => required_truncation(alpha, tail_eps),
        }
    }
}

/// Which amplitude sequence a tail refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Vacuum,
    OneParticle,
}

/// Normalized weight of the discarded levels `n > N` of a branch.
///
/// With `x = tanh²α` the vacuum weights are `(1-x) xⁿ` and the one-particle
/// weights `(1-x)² (n+1) xⁿ`, which sum to `x^{N+1}` and
/// `x^{N+1} ((N+2) - (N+1) x)` past the cutoff.
pub(crate) fn discarded_weight(alpha: SqueezingParameter, n: usize, branch: Branch) -> f64 {
    let x = alpha.level_ratio();
    if x == 0.0 {
        return 0.0;
    }
    let m = (n + 1) as f64;
    let head = (m * x.ln()).exp();
    match branch {
        Branch::Vacuum => head,
        Branch::OneParticle => head * ((m + 1.0) - m * x),
    }
}

/// Smallest `N >= 1` for which both branches discard less than `tail_eps`.
pub fn required_truncation(alpha: SqueezingParameter, tail_eps: f64) -> Result<usize> {
    if !(tail_eps > 0.0 && tail_eps < 1.0) {
        return Err(Error::InvalidParameter(format!("tail_eps must lie in (0, 1), got {tail_eps}")));
    }
    let x = alpha.level_ratio();
    if x == 0.0 {
        return Ok(1);
    }
    let fits = |n: usize| {
        discarded_weight(alpha, n, Branch::Vacuum) < tail_eps
            && discarded_weight(alpha, n, Branch::OneParticle) < tail_eps
    };
    let overflow = |required| Error::TruncationOverflow { alpha: alpha.alpha(), required, cap: N_MAX_CAP };

    // vacuum bound x^{N+1} < eps, then walk up for the one-particle branch
    let estimate = (tail_eps.ln() / x.ln()).floor() - 1.0;
    if !estimate.is_finite() || estimate > N_MAX_CAP as f64 {
        return Err(overflow(if estimate.is_finite() { estimate as usize } else { usize::MAX }));
    }
    let mut n = (estimate.max(1.0)) as usize;
    while n > 1 && fits(n - 1) {
        n -= 1;
    }
    while !fits(n) {
        n += 1;
        if n > N_MAX_CAP {
            return Err(overflow(n));
        }
    }
    Ok(n)
}

fn pair_basis(n: usize) -> BasisLabel {
    BasisLabel::new(vec![(Subsystem::Rob, n + 2), (Subsystem::AntiRob, n + 1)]).expect("valid pair basis")
}

fn triple_basis(n: usize) -> BasisLabel {
    BasisLabel::new(vec![(Subsystem::Alice, 2), (Subsystem::Rob, n + 2), (Subsystem::AntiRob, n + 1)])
        .expect("valid tripartite basis")
}

/// Renormalized vacuum amplitudes `c_n ∝ tanhⁿα / cosh α`, `n = 0..=N`.
pub fn vacuum_amplitudes(alpha: SqueezingParameter, n: usize) -> Vec<f64> {
    let t = alpha.tanh();
    let mut c = Vec::with_capacity(n + 1);
    let mut power = 1.0 / alpha.cosh();
    for _ in 0..=n {
        c.push(power);
        power *= t;
    }
    renormalize(c)
}

/// Renormalized one-particle amplitudes `d_n ∝ tanhⁿα √(n+1) / cosh²α`.
pub fn one_particle_amplitudes(alpha: SqueezingParameter, n: usize) -> Vec<f64> {
    let t = alpha.tanh();
    let ch = alpha.cosh();
    let mut d = Vec::with_capacity(n + 1);
    let mut power = 1.0 / (ch * ch);
    for k in 0..=n {
        d.push(power * ((k + 1) as f64).sqrt());
        power *= t;
    }
    renormalize(d)
}

fn renormalize(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    v
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Two-mode squeezed vacuum on `R ⊗ R̄`.
pub fn vacuum_rindler(alpha: SqueezingParameter, n: usize) -> PureStateVector {
    let basis = pair_basis(n);
    let w = n + 1;
    let amps = vacuum_amplitudes(alpha, n).into_iter().enumerate().map(|(k, c)| (k * w + k, real(c))).collect();
    PureStateVector::new(basis, SparseVector::from_pairs(amps)).expect("indices inside basis")
}

/// One-particle Unruh state on `R ⊗ R̄`.
pub fn one_particle_unruh(alpha: SqueezingParameter, n: usize) -> PureStateVector {
    let basis = pair_basis(n);
    let w = n + 1;
    let amps =
        one_particle_amplitudes(alpha, n).into_iter().enumerate().map(|(k, d)| ((k + 1) * w + k, real(d))).collect();
    PureStateVector::new(basis, SparseVector::from_pairs(amps)).expect("indices inside basis")
}

/// Global state `(|0⟩_A ⊗ vacuum + |1⟩_A ⊗ one-particle) / √2` on `A ⊗ R ⊗ R̄`.
pub fn tripartite_state(alpha: SqueezingParameter, n: usize) -> PureStateVector {
    let pair_dim = (n + 2) * (n + 1);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let vac = vacuum_rindler(alpha, n);
    let one = one_particle_unruh(alpha, n);
    let amps = vac
        .amplitudes()
        .entries()
        .iter()
        .map(|&(i, a)| (i, a * s))
        .chain(one.amplitudes().entries().iter().map(|&(i, a)| (pair_dim + i, a * s)))
        .collect();
    PureStateVector::new(triple_basis(n), SparseVector::from_pairs(amps)).expect("indices inside basis")
}

/// The truncated tripartite system at one squeezing parameter, with its
/// reduced states.
#[derive(Clone, Debug)]
pub struct RindlerSystem {
    alpha: SqueezingParameter,
    n: usize,
    global: DensityMatrix,
}

impl RindlerSystem {
    pub fn new(alpha: SqueezingParameter, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("truncation N must be at least 1".into()));
        }
        Ok(RindlerSystem { alpha, n, global: DensityMatrix::outer(&tripartite_state(alpha, n)) })
    }

    pub fn with_policy(alpha: SqueezingParameter, policy: &TruncationPolicy) -> Result<Self> {
        Self::new(alpha, policy.resolve(alpha)?)
    }

    pub fn alpha(&self) -> SqueezingParameter {
        self.alpha
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn global(&self) -> &DensityMatrix {
        &self.global
    }

    pub fn reduced(&self, keep: &[Subsystem]) -> DensityMatrix {
        self.global.partial_trace(keep).expect("subsystems belong to the tripartite basis")
    }

    pub fn rho_ar(&self) -> DensityMatrix {
        self.reduced(&[Subsystem::Alice, Subsystem::Rob])
    }

    pub fn rho_a_antir(&self) -> DensityMatrix {
        self.reduced(&[Subsystem::Alice, Subsystem::AntiRob])
    }

    pub fn rho_r_antir(&self) -> DensityMatrix {
        self.reduced(&[Subsystem::Rob, Subsystem::AntiRob])
    }

    pub fn rho_a(&self) -> DensityMatrix {
        self.reduced(&[Subsystem::Alice])
    }

    pub fn rho_r(&self) -> DensityMatrix {
        self.reduced(&[Subsystem::Rob])
    }

    pub fn rho_antir(&self) -> DensityMatrix {
        self.reduced(&[Subsystem::AntiRob])
    }
}

pub fn rho_ar(alpha: SqueezingParameter, n: usize) -> DensityMatrix {
    DensityMatrix::outer(&tripartite_state(alpha, n)).partial_trace(&[Subsystem::Alice, Subsystem::Rob]).unwrap()
}

pub fn rho_a_antir(alpha: SqueezingParameter, n: usize) -> DensityMatrix {
    DensityMatrix::outer(&tripartite_state(alpha, n)).partial_trace(&[Subsystem::Alice, Subsystem::AntiRob]).unwrap()
}

pub fn rho_r_antir(alpha: SqueezingParameter, n: usize) -> DensityMatrix {
    DensityMatrix::outer(&tripartite_state(alpha, n)).partial_trace(&[Subsystem::Rob, Subsystem::AntiRob]).unwrap()
}

pub fn rho_a(alpha: SqueezingParameter, n: usize) -> DensityMatrix {
    DensityMatrix::outer(&tripartite_state(alpha, n)).partial_trace(&[Subsystem::Alice]).unwrap()
}

pub fn rho_r(alpha: SqueezingParameter, n: usize) -> DensityMatrix {
    DensityMatrix::outer(&tripartite_state(alpha, n)).partial_trace(&[Subsystem::Rob]).unwrap()
}

pub fn rho_antir(alpha: SqueezingParameter, n: usize) -> DensityMatrix {
    DensityMatrix::outer(&tripartite_state(alpha, n)).partial_trace(&[Subsystem::AntiRob]).unwrap()
}

/// Rob's reduced state of the vacuum alone: thermal at `T = a/2π`, with
/// successive level ratio `tanh²α`.
pub fn unruh_thermal_marginal(alpha: SqueezingParameter, n: usize) -> DensityMatrix {
    DensityMatrix::outer(&vacuum_rindler(alpha, n)).partial_trace(&[Subsystem::Rob]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockla::Tolerances;
    use approx::assert_abs_diff_eq;

    fn half() -> SqueezingParameter {
        // tanh α = 1/2
        SqueezingParameter::new(0.5 * 3f64.ln()).unwrap()
    }

    fn zero() -> SqueezingParameter {
        SqueezingParameter::new(0.0).unwrap()
    }

    #[test]
    fn squeezing_parameter_validation() {
        assert!(SqueezingParameter::new(-0.1).is_err());
        assert!(SqueezingParameter::new(f64::NAN).is_err());
        assert!(SqueezingParameter::new(0.0).is_ok());
    }

    #[test]
    fn squeezing_from_acceleration_examples() {
        let omega = 1.0;
        let accel = std::f64::consts::PI * omega / 2f64.ln();
        let a = squeezing_from_acceleration(&AccelerationSpec { omega, accel }).unwrap();
        assert_abs_diff_eq!(a.alpha(), 0.5 * 3f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(a.alpha(), 0.549306, epsilon = 1e-6);

        let tiny = squeezing_from_acceleration(&AccelerationSpec { omega: 1.0, accel: 1e-3 }).unwrap();
        assert_eq!(tiny.alpha(), 0.0);

        let a10 = squeezing_from_acceleration(&AccelerationSpec { omega: 1.0, accel: 10.0 }).unwrap();
        let t = (-std::f64::consts::PI / 10.0).exp();
        assert_abs_diff_eq!(a10.alpha(), 0.5 * ((1.0 + t) / (1.0 - t)).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(a10.alpha(), 0.92959, epsilon = 1e-5);

        assert!(squeezing_from_acceleration(&AccelerationSpec { omega: 0.0, accel: 1.0 }).is_err());
        assert!(squeezing_from_acceleration(&AccelerationSpec { omega: 1.0, accel: -1.0 }).is_err());
    }

    #[test]
    fn squeezing_increases_with_acceleration() {
        let mut last = -1.0;
        for k in 1..50 {
            let a = squeezing_from_acceleration(&AccelerationSpec { omega: 1.0, accel: 0.2 * k as f64 }).unwrap();
            assert!(a.alpha() > last);
            last = a.alpha();
        }
    }

    /// Brute-force discarded weight: sum the normalized weights past `n`
    /// until they stop contributing.
    fn brute_tail(alpha: SqueezingParameter, n: usize, branch: Branch) -> f64 {
        let x = alpha.level_ratio();
        let mut sum = 0.0;
        let mut k = n + 1;
        loop {
            let w = match branch {
                Branch::Vacuum => (1.0 - x) * x.powi(k as i32),
                Branch::OneParticle => (1.0 - x) * (1.0 - x) * (k + 1) as f64 * x.powi(k as i32),
            };
            sum += w;
            if w < 1e-18 * sum.max(1e-300) || k > n + 200_000 {
                break;
            }
            k += 1;
        }
        sum
    }

    #[test]
    fn required_truncation_examples() {
        assert_eq!(required_truncation(zero(), 1e-12).unwrap(), 1);
        // vacuum alone needs (1/4)^{N+1} < 1e-12, i.e. N = 19; the one-particle
        // tail (1/4)^{N+1} (N+2 - (N+1)/4) pushes the joint requirement to 21
        let n = required_truncation(half(), 1e-12).unwrap();
        assert_eq!(n, 21);
        assert!(discarded_weight(half(), 19, Branch::Vacuum) < 1e-12);
        assert!(discarded_weight(half(), 18, Branch::Vacuum) >= 1e-12);
        assert!(brute_tail(half(), 20, Branch::OneParticle) >= 1e-12);
        assert!(brute_tail(half(), 21, Branch::OneParticle) < 1e-12);
    }

    #[test]
    fn required_truncation_at_alpha_two_matches_brute_force() {
        let a = SqueezingParameter::new(2.0).unwrap();
        let n = required_truncation(a, 1e-12).unwrap();
        // smallest N where both brute-force tails are below eps
        let mut brute = 1;
        while brute_tail(a, brute, Branch::Vacuum) >= 1e-12 || brute_tail(a, brute, Branch::OneParticle) >= 1e-12 {
            brute += 1;
        }
        assert_eq!(n, brute);
        assert_eq!(n, 423);
    }

    #[test]
    fn truncation_overflow_is_reported() {
        let a = SqueezingParameter::new(6.0).unwrap();
        match required_truncation(a, 1e-12) {
            Err(Error::TruncationOverflow { alpha, cap, .. }) => {
                assert_eq!(alpha, 6.0);
                assert_eq!(cap, N_MAX_CAP);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
        assert!(required_truncation(a, 0.0).is_err());
        assert!(TruncationPolicy::Fixed(0).resolve(a).is_err());
    }

    #[test]
    fn vacuum_examples() {
        let v = vacuum_rindler(zero(), 4);
        assert_eq!(v.amplitude(&[0, 0]).unwrap().re, 1.0);
        assert_eq!(v.amplitudes().nnz(), 1);

        let v = vacuum_rindler(half(), 30);
        assert_abs_diff_eq!(v.amplitude(&[0, 0]).unwrap().re, 0.8660254037844386, epsilon = 1e-9);
        assert_abs_diff_eq!(v.amplitude(&[1, 1]).unwrap().re, 0.4330127018922193, epsilon = 1e-9);
        for alpha in [0.0, 0.3, 1.0, 2.5] {
            let a = SqueezingParameter::new(alpha).unwrap();
            assert_abs_diff_eq!(vacuum_rindler(a, 17).norm_sqr(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn one_particle_examples() {
        let o = one_particle_unruh(zero(), 3);
        assert_eq!(o.amplitude(&[1, 0]).unwrap().re, 1.0);
        // before renormalization d_0 = 3/4 and d_1 = (3/4)(1/2)√2; the ratio survives it
        let o = one_particle_unruh(half(), 40);
        let ratio = o.amplitude(&[2, 1]).unwrap().re / o.amplitude(&[1, 0]).unwrap().re;
        assert_abs_diff_eq!(ratio, 0.5303300858899106 / 0.75, epsilon = 1e-13);
        for alpha in [0.0, 0.7, 2.0] {
            let a = SqueezingParameter::new(alpha).unwrap();
            for n in [1, 5, 40] {
                let overlap = vacuum_rindler(a, n).inner(&one_particle_unruh(a, n)).unwrap();
                assert_eq!(overlap, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn tripartite_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = tripartite_state(zero(), 2);
        assert_abs_diff_eq!(psi.amplitude(&[0, 0, 0]).unwrap().re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.amplitude(&[1, 1, 0]).unwrap().re, s, epsilon = 1e-15);
        let tol = Tolerances::default();
        for alpha in [0.0, 0.25, 1.0, 3.0] {
            let a = SqueezingParameter::new(alpha).unwrap();
            let n = required_truncation(a, 1e-12).unwrap();
            assert_abs_diff_eq!(tripartite_state(a, n).norm_sqr(), 1.0, epsilon = 1e-12);
            let ra = rho_a(a, n.min(60)).to_dense_real().unwrap();
            assert_abs_diff_eq!(ra[0][0], 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(ra[1][1], 0.5, epsilon = 1e-15);
            assert_eq!(ra[0][1], 0.0);
            assert_abs_diff_eq!(rho_a(a, n.min(60)).entropy(&tol).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn bipartite_states_at_zero_squeezing() {
        let n = 3;
        let ar = rho_ar(zero(), n);
        // Bell projector on |0,0⟩, |1,1⟩ of A ⊗ R (R has N + 2 levels)
        let w = n + 2;
        let e = ar.entries();
        for (i, j) in [(0, 0), (0, w + 1), (w + 1, 0), (w + 1, w + 1)] {
            assert_abs_diff_eq!(e[&(i, j)].re, 0.5, epsilon = 1e-15);
        }
        assert_eq!(e.len(), 4);

        let aar = rho_a_antir(zero(), n).to_dense_real().unwrap();
        let w = n + 1;
        assert_abs_diff_eq!(aar[0][0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(aar[w][w], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(aar.iter().flatten().map(|x| x.abs()).sum::<f64>(), 1.0, epsilon = 1e-15);

        let rar = rho_r_antir(zero(), n).entries();
        // |0,0⟩ and |1,0⟩ of R ⊗ R̄
        assert_abs_diff_eq!(rar[&(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rar[&(n + 1, n + 1)].re, 0.5, epsilon = 1e-15);
        assert_eq!(rar.len(), 2);
    }

    #[test]
    fn single_party_marginals() {
        let a = SqueezingParameter::new(1.3).unwrap();
        let r = rho_r(a, 40);
        for ((i, j), _) in r.entries() {
            assert_eq!(i, j, "rho_R must be diagonal in the occupation basis");
        }
        let ar0 = rho_antir(zero(), 5).to_dense_real().unwrap();
        assert_abs_diff_eq!(ar0[0][0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ar0.iter().flatten().sum::<f64>(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn thermal_marginal_examples() {
        let m = unruh_thermal_marginal(zero(), 4).to_dense_real().unwrap();
        assert_eq!(m[0][0], 1.0);

        let n = required_truncation(half(), 1e-12).unwrap();
        let m = unruh_thermal_marginal(half(), n);
        assert_abs_diff_eq!(m.entry(0, 0).re, 0.75, epsilon = 1e-11);
        assert_abs_diff_eq!(m.entry(1, 1).re, 3.0 / 16.0, epsilon = 1e-11);
        for k in 0..n {
            let ratio = m.entry(k + 1, k + 1).re / m.entry(k, k).re;
            assert_abs_diff_eq!(ratio, 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn thermal_marginal_is_the_vacuum_reduction() {
        let a = SqueezingParameter::new(0.9).unwrap();
        let n = 50;
        let direct = unruh_thermal_marginal(a, n);
        let via_trace = DensityMatrix::outer(&vacuum_rindler(a, n)).partial_trace(&[Subsystem::Rob]).unwrap();
        let c = vacuum_amplitudes(a, n);
        for k in 0..=n {
            assert_abs_diff_eq!(direct.entry(k, k).re, via_trace.entry(k, k).re, epsilon = 1e-15);
            assert_abs_diff_eq!(direct.entry(k, k).re, c[k] * c[k], epsilon = 1e-12);
        }
    }
}
