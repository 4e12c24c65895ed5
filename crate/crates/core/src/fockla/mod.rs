//! Small linear-algebra layer over truncated, labeled Fock tensor-product
//! spaces.
//!
//! Density matrices are stored as a sum of outer products of sparse branch
//! vectors, `ρ = Σ_k |b_k⟩⟨b_k|`. Every state in this crate is obtained from a
//! pure state by partial trace or by a rank-one projection, so this form is
//! exact, symmetric and positive semidefinite by construction, and it keeps
//! memory linear in the truncation even when the dense matrix would have
//! millions of rows. Spectra are computed from the Gram matrix of the branches,
//! which shares the nonzero spectrum of `ρ`.

mod density;
mod spectral;
mod vector;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use density::DensityMatrix;
pub use spectral::{jacobi_eigen, tridiagonal_eigenvalues, SparseHermitian, SpectralLayout, Spectrum};
pub use vector::{PureStateVector, SparseVector};

/// Numerical tolerances shared by the state algebra.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed deviation of traces and norms from one.
    pub norm: f64,
    /// Eigenvalues in `[-psd, 0)` are clamped to zero; anything lower is an error.
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { norm: 1e-9, psd: 1e-10 }
    }
}

/// Observer owning a tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Subsystem {
    /// Alice's inertial qubit sector (mode `u_i`).
    Alice,
    /// Rob's Fock ladder in the right Rindler wedge (region I).
    Rob,
    /// AntiRob's Fock ladder in the left Rindler wedge (region II).
    AntiRob,
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::Alice => "A",
            Subsystem::Rob => "R",
            Subsystem::AntiRob => "AntiR",
        })
    }
}

/// Ordered tensor factors of a Hilbert space. Flat indices are row-major:
/// the first factor is the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    factors: Vec<(Subsystem, usize)>,
}

impl BasisLabel {
    pub fn new(factors: Vec<(Subsystem, usize)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Dimension("basis needs at least one factor".into()));
        }
        for (i, &(id, dim)) in factors.iter().enumerate() {
            if dim == 0 {
                return Err(Error::Dimension(format!("factor {id} has dimension 0")));
            }
            if id == Subsystem::Alice && dim != 2 {
                return Err(Error::Dimension(format!("Alice factor must have dimension 2, got {dim}")));
            }
            if factors[..i].iter().any(|&(other, _)| other == id) {
                return Err(Error::Dimension(format!("factor {id} appears twice")));
            }
        }
        Ok(BasisLabel { factors })
    }

    pub fn factors(&self) -> &[(Subsystem, usize)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|&(_, d)| d).product()
    }

    pub fn position(&self, id: Subsystem) -> Option<usize> {
        self.factors.iter().position(|&(other, _)| other == id)
    }

    pub fn dim_of(&self, id: Subsystem) -> Option<usize> {
        self.position(id).map(|p| self.factors[p].1)
    }

    pub fn contains(&self, id: Subsystem) -> bool {
        self.position(id).is_some()
    }

    /// Flat index of a multi-index given in factor order.
    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::Dimension(format!(
                "multi-index has {} digits, basis has {} factors",
                digits.len(),
                self.factors.len()
            )));
        }
        let mut flat = 0;
        for (&d, &(id, dim)) in digits.iter().zip(&self.factors) {
            if d >= dim {
                return Err(Error::Dimension(format!("level {d} out of range for {id} (dim {dim})")));
            }
            flat = flat * dim + d;
        }
        Ok(flat)
    }

    /// Multi-index of a flat index, in factor order.
    pub fn digits_of(&self, mut flat: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (slot, &(_, dim)) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        digits
    }

    /// Sub-basis made of the listed subsystems, kept in this basis' order.
    pub fn restrict(&self, keep: &[Subsystem]) -> Result<BasisLabel> {
        for &id in keep {
            if !self.contains(id) {
                return Err(Error::UnknownSubsystem(id));
            }
        }
        let factors = self.factors.iter().copied().filter(|(id, _)| keep.contains(id)).collect();
        BasisLabel::new(factors)
    }

    /// Concatenation of two bases over disjoint subsystems.
    pub fn tensor(&self, other: &BasisLabel) -> Result<BasisLabel> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        BasisLabel::new(factors)
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (id, dim)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{id}[{dim}]")?;
        }
        Ok(())
    }
}

/// Split of a basis into kept and traced factors, mapping a flat index of the
/// full space to the pair of flat indices in the two sub-spaces.
pub(crate) struct FactorSplit {
    dims: Vec<usize>,
    kept: Vec<bool>,
}

impl FactorSplit {
    pub(crate) fn new(basis: &BasisLabel, keep: &[Subsystem]) -> Self {
        FactorSplit {
            dims: basis.factors.iter().map(|&(_, d)| d).collect(),
            kept: basis.factors.iter().map(|(id, _)| keep.contains(id)).collect(),
        }
    }

    /// Returns `(kept_index, traced_index)`.
    pub(crate) fn split(&self, mut flat: usize) -> (usize, usize) {
        let (mut kept, mut traced) = (0, 0);
        let (mut kept_stride, mut traced_stride) = (1, 1);
        for (&dim, &is_kept) in self.dims.iter().zip(&self.kept).rev() {
            let digit = flat % dim;
            flat /= dim;
            if is_kept {
                kept += digit * kept_stride;
                kept_stride *= dim;
            } else {
                traced += digit * traced_stride;
                traced_stride *= dim;
            }
        }
        (kept, traced)
    }
}
