use num_complex::Complex64;

use super::BasisLabel;
use crate::error::{Error, Result};

/// Sparse vector with entries sorted by index and no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(usize, Complex64)>,
}

impl SparseVector {
    /// Builds a vector from unsorted pairs; duplicate indices are summed.
    pub fn from_pairs(mut pairs: Vec<(usize, Complex64)>) -> Self {
        pairs.sort_by_key(|&(i, _)| i);
        let mut entries: Vec<(usize, Complex64)> = Vec::with_capacity(pairs.len());
        for (i, a) in pairs {
            match entries.last_mut() {
                Some((j, b)) if *j == i => *b += a,
                _ => entries.push((i, a)),
            }
        }
        entries.retain(|&(_, a)| a != Complex64::new(0.0, 0.0));
        SparseVector { entries }
    }

    pub fn from_real(pairs: impl IntoIterator<Item = (usize, f64)>) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(i, a)| (i, Complex64::new(a, 0.0))).collect())
    }

    pub fn entries(&self) -> &[(usize, Complex64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|&(i, _)| i)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn scaled(&self, s: f64) -> SparseVector {
        SparseVector { entries: self.entries.iter().map(|&(i, a)| (i, a * s)).collect() }
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &SparseVector) -> Complex64 {
        let (mut i, mut j) = (0, 0);
        let mut acc = Complex64::new(0.0, 0.0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (self.entries[i], other.entries[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a.1.conj() * b.1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn get(&self, index: usize) -> Complex64 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(k) => self.entries[k].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|(_, a)| a.im == 0.0)
    }
}

/// Normalized pure state over a labeled basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PureStateVector {
    basis: BasisLabel,
    amplitudes: SparseVector,
}

impl PureStateVector {
    pub fn new(basis: BasisLabel, amplitudes: SparseVector) -> Result<Self> {
        if let Some(max) = amplitudes.max_index() {
            if max >= basis.total_dim() {
                return Err(Error::Dimension(format!(
                    "amplitude index {max} outside basis {basis} of dimension {}",
                    basis.total_dim()
                )));
            }
        }
        Ok(PureStateVector { basis, amplitudes })
    }

    /// Dense real amplitudes, for small test states.
    pub fn from_dense(basis: BasisLabel, amplitudes: &[f64]) -> Result<Self> {
        if amplitudes.len() != basis.total_dim() {
            return Err(Error::Dimension(format!(
                "{} amplitudes for basis of dimension {}",
                amplitudes.len(),
                basis.total_dim()
            )));
        }
        Self::new(basis, SparseVector::from_real(amplitudes.iter().copied().enumerate()))
    }

    pub fn basis(&self) -> &BasisLabel {
        &self.basis
    }

    pub fn amplitudes(&self) -> &SparseVector {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_sqr()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        Ok(PureStateVector { basis: self.basis.clone(), amplitudes: self.amplitudes.scaled(1.0 / n.sqrt()) })
    }

    pub fn inner(&self, other: &PureStateVector) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::Dimension(format!("bases differ: {} vs {}", self.basis, other.basis)));
        }
        Ok(self.amplitudes.inner(&other.amplitudes))
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amplitudes.get(self.basis.index_of(digits)?))
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.basis.total_dim()];
        for &(i, a) in self.amplitudes.entries() {
            out[i] = a;
        }
        out
    }
}
