use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use super::spectral::{jacobi_eigen, SpectralLayout};
use super::{BasisLabel, FactorSplit, PureStateVector, SparseVector, Spectrum, Subsystem, Tolerances};
use crate::error::{Error, Result};

/// Density operator `ρ = Σ_k |b_k⟩⟨b_k|` stored through its (unnormalized)
/// branch vectors.
///
/// States produced by the builders in this crate are real. Post-measurement
/// states for directions off the x–z plane of the Bloch sphere carry complex
/// branches, so the branch amplitudes are complex in general.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    basis: BasisLabel,
    branches: Vec<SparseVector>,
}

impl DensityMatrix {
    pub fn from_branches(basis: BasisLabel, branches: Vec<SparseVector>) -> Result<Self> {
        let dim = basis.total_dim();
        for b in &branches {
            if b.max_index().is_some_and(|m| m >= dim) {
                return Err(Error::Dimension(format!("branch entry outside basis {basis}")));
            }
        }
        let branches = branches.into_iter().filter(|b| !b.is_empty()).collect();
        Ok(DensityMatrix { basis, branches })
    }

    /// `|v⟩⟨v|`; the trace equals the squared norm of `v`.
    pub fn outer(v: &PureStateVector) -> Self {
        DensityMatrix::from_branches(v.basis().clone(), vec![v.amplitudes().clone()])
            .expect("pure state amplitudes lie inside their basis")
    }

    /// Diagonal state with the given occupation probabilities.
    pub fn from_diagonal(basis: BasisLabel, probabilities: &[f64]) -> Result<Self> {
        if probabilities.len() != basis.total_dim() {
            return Err(Error::Dimension(format!(
                "{} probabilities for basis of dimension {}",
                probabilities.len(),
                basis.total_dim()
            )));
        }
        if let Some(p) = probabilities.iter().find(|p| !(**p >= 0.0)) {
            return Err(Error::InvalidParameter(format!("negative probability {p}")));
        }
        let branches =
            probabilities.iter().enumerate().map(|(i, &p)| SparseVector::from_real([(i, p.sqrt())])).collect();
        DensityMatrix::from_branches(basis, branches)
    }

    /// Real symmetric positive semidefinite matrix given densely (row-major).
    /// Decomposed with Jacobi; eigenvalues in `[-psd, 0)` are dropped.
    pub fn from_dense(basis: BasisLabel, rows: &[Vec<f64>], tol: &Tolerances) -> Result<Self> {
        let n = basis.total_dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("dense matrix is not {n}×{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidParameter(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let eig = jacobi_eigen(&flat, n, true)?;
        let vectors = eig.vectors.expect("vectors requested");
        let mut branches = Vec::new();
        for (lambda, v) in eig.values.iter().zip(vectors) {
            if *lambda < -tol.psd {
                return Err(Error::NegativeEigenvalue { value: *lambda, tolerance: tol.psd });
            }
            if *lambda > 0.0 {
                let s = lambda.sqrt();
                branches.push(SparseVector::from_real(v.iter().enumerate().map(|(i, &x)| (i, s * x))));
            }
        }
        DensityMatrix::from_branches(basis, branches)
    }

    /// Convex combination `Σ w_i ρ_i`.
    pub fn mix(states: &[(f64, &DensityMatrix)], tol: &Tolerances) -> Result<Self> {
        let Some((_, first)) = states.first() else {
            return Err(Error::InvalidParameter("mixture of zero states".into()));
        };
        let mut total = 0.0;
        let mut branches = Vec::new();
        for &(w, rho) in states {
            if rho.basis != first.basis {
                return Err(Error::Dimension(format!("cannot mix {} with {}", first.basis, rho.basis)));
            }
            if !(w >= 0.0) {
                return Err(Error::InvalidParameter(format!("negative mixture weight {w}")));
            }
            total += w;
            branches.extend(rho.branches.iter().map(|b| b.scaled(w.sqrt())));
        }
        if (total - 1.0).abs() > tol.norm {
            return Err(Error::InvalidParameter(format!("mixture weights sum to {total}")));
        }
        DensityMatrix::from_branches(first.basis.clone(), branches)
    }

    pub fn basis(&self) -> &BasisLabel {
        &self.basis
    }

    pub fn branches(&self) -> &[SparseVector] {
        &self.branches
    }

    pub fn dim(&self) -> usize {
        self.basis.total_dim()
    }

    pub fn is_real(&self) -> bool {
        self.branches.iter().all(SparseVector::is_real)
    }

    pub fn trace(&self) -> f64 {
        self.branches.iter().map(SparseVector::norm_sqr).sum()
    }

    pub fn scaled(&self, s: f64) -> DensityMatrix {
        let r = s.sqrt();
        DensityMatrix { basis: self.basis.clone(), branches: self.branches.iter().map(|b| b.scaled(r)).collect() }
    }

    pub fn normalized(&self) -> Result<DensityMatrix> {
        let t = self.trace();
        if !(t > 0.0) {
            return Err(Error::InvalidParameter("cannot normalize a zero-trace state".into()));
        }
        Ok(self.scaled(1.0 / t))
    }

    /// Matrix element `⟨i|ρ|j⟩`.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.branches.iter().map(|b| b.get(i) * b.get(j).conj()).sum()
    }

    /// All structurally nonzero matrix elements.
    pub fn entries(&self) -> HashMap<(usize, usize), Complex64> {
        let mut out: HashMap<(usize, usize), Complex64> = HashMap::new();
        for b in &self.branches {
            for &(i, a) in b.entries() {
                for &(j, c) in b.entries() {
                    *out.entry((i, j)).or_default() += a * c.conj();
                }
            }
        }
        out
    }

    /// Dense real matrix; fails if any entry has an imaginary part.
    pub fn to_dense_real(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for ((i, j), z) in self.entries() {
            if z.im != 0.0 {
                return Err(Error::InvalidParameter("matrix has complex entries".into()));
            }
            m[i][j] = z.re;
        }
        Ok(m)
    }

    /// Reduced state on the subsystems in `keep`.
    pub fn partial_trace(&self, keep: &[Subsystem]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidParameter("partial trace must keep at least one subsystem".into()));
        }
        let kept_basis = self.basis.restrict(keep)?;
        if kept_basis.len() == self.basis.len() {
            return Ok(self.clone());
        }
        let split = FactorSplit::new(&self.basis, keep);
        let mut branches = Vec::new();
        for b in &self.branches {
            let mut groups: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
            for &(flat, a) in b.entries() {
                let (kept, traced) = split.split(flat);
                groups.entry(traced).or_default().push((kept, a));
            }
            branches.extend(groups.into_values().map(SparseVector::from_pairs));
        }
        DensityMatrix::from_branches(kept_basis, branches)
    }

    /// Tensor product over disjoint subsystems.
    pub fn kron(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let basis = self.basis.tensor(&other.basis)?;
        let d2 = other.dim();
        let mut branches = Vec::with_capacity(self.branches.len() * other.branches.len());
        for a in &self.branches {
            for b in &other.branches {
                let mut pairs = Vec::with_capacity(a.nnz() * b.nnz());
                for &(i, x) in a.entries() {
                    for &(j, y) in b.entries() {
                        pairs.push((i * d2 + j, x * y));
                    }
                }
                branches.push(SparseVector::from_pairs(pairs));
            }
        }
        DensityMatrix::from_branches(basis, branches)
    }

    /// Gram matrix `G_jk = ⟨b_j|b_k⟩` of the branches as an upper-triangle
    /// pattern with values.
    pub(crate) fn gram(&self) -> (Vec<(usize, usize)>, Vec<Complex64>) {
        let mut by_index: Vec<(usize, usize, Complex64)> = Vec::new();
        for (k, b) in self.branches.iter().enumerate() {
            by_index.extend(b.entries().iter().map(|&(i, a)| (i, k, a)));
        }
        by_index.sort_by_key(|&(i, k, _)| (i, k));

        let mut products: Vec<((usize, usize), Complex64)> = Vec::new();
        for run in by_index.chunk_by(|x, y| x.0 == y.0) {
            for (p, &(_, j, aj)) in run.iter().enumerate() {
                for &(_, k, ak) in &run[p..] {
                    products.push(((j, k), aj.conj() * ak));
                }
            }
        }
        products.sort_by_key(|&(key, _)| key);
        let mut pattern: Vec<(usize, usize)> = Vec::with_capacity(products.len());
        let mut values: Vec<Complex64> = Vec::with_capacity(products.len());
        for (key, v) in products {
            if pattern.last() == Some(&key) {
                *values.last_mut().unwrap() += v;
            } else {
                pattern.push(key);
                values.push(v);
            }
        }
        (pattern, values)
    }

    /// Upper triangle of `ρ` itself, as a pattern with values.
    fn upper_entries(&self) -> (Vec<(usize, usize)>, Vec<Complex64>) {
        let mut acc: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for b in &self.branches {
            let e = b.entries();
            for (p, &(i, a)) in e.iter().enumerate() {
                for &(j, c) in &e[p..] {
                    *acc.entry((i, j)).or_default() += a * c.conj();
                }
            }
        }
        acc.into_iter().unzip()
    }

    /// Spectrum through the branch Gram matrix, or through `ρ` itself when
    /// there are more branches than basis states.
    pub fn spectrum(&self, tol: &Tolerances) -> Result<Spectrum> {
        let (size, (pattern, values)) = if self.branches.len() > self.dim() {
            (self.dim(), self.upper_entries())
        } else {
            (self.branches.len(), self.gram())
        };
        let layout = SpectralLayout::new(size, &pattern)?;
        Spectrum::from_raw(layout.eigenvalues(&values)?, self.dim(), tol)
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self, tol: &Tolerances) -> Result<f64> {
        Ok(self.spectrum(tol)?.entropy())
    }
}
