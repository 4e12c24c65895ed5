use num_complex::Complex64;

use super::Tolerances;
use crate::error::{Error, Result};

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-12;
const QL_MAX_ITER: usize = 60;

/// Eigenvalues of a density matrix, descending, negatives clamped to zero.
///
/// Only the support computed from the branch Gram matrix is stored; the
/// remaining `dimension - eigenvalues.len()` eigenvalues are exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    dimension: usize,
    clamped: usize,
}

impl Spectrum {
    pub fn from_raw(mut raw: Vec<f64>, dimension: usize, tol: &Tolerances) -> Result<Self> {
        let mut clamped = 0;
        for v in &mut raw {
            if !v.is_finite() {
                return Err(Error::Dimension(format!("non-finite eigenvalue {v}")));
            }
            if *v < -tol.psd {
                return Err(Error::NegativeEigenvalue { value: *v, tolerance: tol.psd });
            }
            if *v < 0.0 {
                *v = 0.0;
                clamped += 1;
            } else if *v > 1.0 && *v <= 1.0 + tol.psd {
                *v = 1.0;
            }
        }
        raw.sort_by(|a, b| b.total_cmp(a));
        raw.truncate(dimension);
        Ok(Spectrum { eigenvalues: raw, dimension, clamped })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// All `dimension` eigenvalues, zero-padded.
    pub fn full(&self) -> Vec<f64> {
        let mut v = self.eigenvalues.clone();
        v.resize(self.dimension, 0.0);
        v
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn clamped(&self) -> usize {
        self.clamped
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Von Neumann entropy in bits, with `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        let s: f64 = self.eigenvalues.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum();
        s.max(0.0)
    }
}

/// Result of [`jacobi_eigen`]. `vectors[k]` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<Vec<f64>>>,
}

/// Cyclic Jacobi rotations on a dense real symmetric matrix (row-major,
/// `n × n`). Stops when the off-diagonal Frobenius norm drops below
/// `1e-12 · ‖A‖_F`.
pub fn jacobi_eigen(matrix: &[f64], n: usize, want_vectors: bool) -> Result<SymmetricEigen> {
    if matrix.len() != n * n {
        return Err(Error::Dimension(format!("{} entries for a {n}×{n} matrix", matrix.len())));
    }
    let mut a = matrix.to_vec();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };

    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off += a[p * n + q] * a[p * n + q];
                }
            }
        }
        if off.sqrt() <= JACOBI_REL_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(Error::EigenNoConvergence(JACOBI_MAX_SWEEPS));
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    let vectors = v.map(|v| (0..n).map(|k| (0..n).map(|i| v[i * n + k]).collect()).collect());
    Ok(SymmetricEigen { values, vectors })
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `sub` (`sub[i]` couples `i` and `i + 1`), ascending.
pub fn tridiagonal_eigenvalues(diag: &[f64], sub: &[f64]) -> Result<Vec<f64>> {
    if !diag.is_empty() && sub.len() + 1 != diag.len() {
        return Err(Error::Dimension(format!(
            "tridiagonal matrix with {} diagonal and {} off-diagonal entries",
            diag.len(),
            sub.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e2: Vec<f64> = sub.iter().map(|x| x * x).collect();
    e2.push(0.0);
    ql_rational(&mut d, &mut e2)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Square-root-free implicit QL (Reinsch's rational variant) on squared
/// off-diagonals. `e2[i]` couples `i`, `i + 1`; the last slot must be zero.
/// Deflation uses an absolute threshold `(ε · max(|d| + |e|))²`.
fn ql_rational(d: &mut [f64], e2: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    debug_assert_eq!(e2.len(), n);
    e2[n - 1] = 0.0;
    let mut f = 0.0;
    let mut t: f64 = 0.0;
    let mut b = 0.0;
    let mut c = 0.0;
    for l in 0..n {
        let h = d[l].abs() + e2[l].sqrt();
        if t < h {
            t = h;
            b = t * f64::EPSILON;
            c = b * b;
        }
        let mut m = l;
        while e2[m] > c {
            m += 1;
        }
        if m != l {
            let mut iter = 0;
            loop {
                if iter == QL_MAX_ITER {
                    return Err(Error::EigenNoConvergence(QL_MAX_ITER));
                }
                iter += 1;
                let l1 = l + 1;
                let s = e2[l].sqrt();
                let g = d[l];
                let p = (d[l1] - g) / (2.0 * s);
                let r = (p * p + 1.0).sqrt();
                d[l] = s / (p + r.copysign(p));
                let shift = g - d[l];
                for x in &mut d[l1..] {
                    *x -= shift;
                }
                f += shift;

                let mut g = d[m];
                if g == 0.0 {
                    g = b;
                }
                let mut h = g;
                let mut s = 0.0;
                for i in (l..m).rev() {
                    let p = g * h;
                    let r = p + e2[i];
                    e2[i + 1] = s * r;
                    s = e2[i] / r;
                    d[i + 1] = h + s * (h + d[i]);
                    g = d[i] - e2[i] / g;
                    if g == 0.0 {
                        g = b;
                    }
                    h = g * p / r;
                }
                e2[l] = s * g;
                d[l] = h;
                if h == 0.0 || e2[l].abs() <= (c / h).abs() {
                    break;
                }
                e2[l] *= h;
                if e2[l] == 0.0 {
                    break;
                }
            }
        }
        d[l] += f;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Diag(usize),
    Sub(usize),
    Dense { at: usize, size: usize, i: usize, j: usize },
}

#[derive(Clone, Copy, Debug)]
enum ComponentKind {
    Tridiagonal { diag_at: usize, sub_at: usize },
    Dense { at: usize },
}

#[derive(Clone, Copy, Debug)]
struct Component {
    size: usize,
    kind: ComponentKind,
}

/// Block structure of a sparse Hermitian matrix, computed once from its
/// nonzero pattern and reused for every set of values on that pattern.
///
/// Connected components are diagonalized independently. A component whose
/// couplings only link neighbours (in ascending index order) is a Hermitian
/// tridiagonal block; a diagonal unitary removes the phases of its
/// off-diagonal, so it is solved as the real tridiagonal matrix of their
/// moduli. Other components go to dense Jacobi (through the real
/// `[[S, -K], [K, S]]` embedding when complex).
#[derive(Clone, Debug)]
pub struct SpectralLayout {
    dim: usize,
    components: Vec<Component>,
    slots: Vec<Slot>,
    n_diag: usize,
    n_sub: usize,
    n_dense: usize,
}

impl SpectralLayout {
    /// `pattern` lists `(i, j)` positions with `i <= j`; duplicates are allowed
    /// and their values are summed.
    pub fn new(dim: usize, pattern: &[(usize, usize)]) -> Result<Self> {
        let mut uf = UnionFind::new(dim);
        for &(i, j) in pattern {
            if i > j || j >= dim {
                return Err(Error::Dimension(format!("pattern entry ({i}, {j}) invalid for dimension {dim}")));
            }
            if i != j {
                uf.union(i, j);
            }
        }

        // components in order of their smallest index; members ascending
        let mut comp_of_root = vec![usize::MAX; dim];
        let mut comp_of = vec![0; dim];
        let mut local = vec![0; dim];
        let mut sizes = Vec::new();
        for i in 0..dim {
            let r = uf.find(i);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = sizes.len();
                sizes.push(0);
            }
            let c = comp_of_root[r];
            comp_of[i] = c;
            local[i] = sizes[c];
            sizes[c] += 1;
        }

        let mut tridiagonal = vec![true; sizes.len()];
        for &(i, j) in pattern {
            if i != j && local[j] - local[i] != 1 {
                tridiagonal[comp_of[i]] = false;
            }
        }

        let (mut n_diag, mut n_sub, mut n_dense) = (0, 0, 0);
        let components: Vec<Component> = sizes
            .iter()
            .zip(&tridiagonal)
            .map(|(&size, &tri)| {
                let kind = if tri {
                    let k = ComponentKind::Tridiagonal { diag_at: n_diag, sub_at: n_sub };
                    n_diag += size;
                    n_sub += size.saturating_sub(1);
                    k
                } else {
                    let k = ComponentKind::Dense { at: n_dense };
                    n_dense += size * size;
                    k
                };
                Component { size, kind }
            })
            .collect();

        let slots = pattern
            .iter()
            .map(|&(i, j)| {
                let comp = &components[comp_of[i]];
                let (li, lj) = (local[i], local[j]);
                match comp.kind {
                    ComponentKind::Tridiagonal { diag_at, sub_at } => {
                        if li == lj {
                            Slot::Diag(diag_at + li)
                        } else {
                            Slot::Sub(sub_at + li)
                        }
                    }
                    ComponentKind::Dense { at } => Slot::Dense { at, size: comp.size, i: li, j: lj },
                }
            })
            .collect();

        Ok(SpectralLayout { dim, components, slots, n_diag, n_sub, n_dense })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pattern_len(&self) -> usize {
        self.slots.len()
    }

    /// All `dim` eigenvalues for the given values on the pattern (unsorted).
    pub fn eigenvalues(&self, values: &[Complex64]) -> Result<Vec<f64>> {
        if values.len() != self.slots.len() {
            return Err(Error::Dimension(format!(
                "{} values for a pattern of {} entries",
                values.len(),
                self.slots.len()
            )));
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut diag = vec![0.0; self.n_diag];
        let mut sub = vec![zero; self.n_sub];
        let mut dense = vec![zero; self.n_dense];
        for (slot, &v) in self.slots.iter().zip(values) {
            match *slot {
                Slot::Diag(k) => diag[k] += v.re,
                Slot::Sub(k) => sub[k] += v,
                Slot::Dense { at, size, i, j } => {
                    if i == j {
                        dense[at + i * size + i] += Complex64::new(v.re, 0.0);
                    } else {
                        dense[at + i * size + j] += v;
                        dense[at + j * size + i] += v.conj();
                    }
                }
            }
        }

        let mut out = Vec::with_capacity(self.dim);
        for comp in &self.components {
            match comp.kind {
                ComponentKind::Tridiagonal { diag_at, sub_at } => {
                    let m = comp.size;
                    if m == 1 {
                        out.push(diag[diag_at]);
                        continue;
                    }
                    let mut d = diag[diag_at..diag_at + m].to_vec();
                    let mut e2: Vec<f64> = sub[sub_at..sub_at + m - 1].iter().map(|z| z.norm_sqr()).collect();
                    e2.push(0.0);
                    ql_rational(&mut d, &mut e2)?;
                    out.extend_from_slice(&d);
                }
                ComponentKind::Dense { at } => {
                    out.extend(dense_hermitian_eigenvalues(&dense[at..at + comp.size * comp.size], comp.size)?);
                }
            }
        }
        Ok(out)
    }
}

fn dense_hermitian_eigenvalues(h: &[Complex64], m: usize) -> Result<Vec<f64>> {
    if h.iter().all(|z| z.im == 0.0) {
        let real: Vec<f64> = h.iter().map(|z| z.re).collect();
        return Ok(jacobi_eigen(&real, m, false)?.values);
    }
    let n = 2 * m;
    let mut emb = vec![0.0; n * n];
    for i in 0..m {
        for j in 0..m {
            let z = h[i * m + j];
            emb[i * n + j] = z.re;
            emb[(i + m) * n + (j + m)] = z.re;
            emb[i * n + (j + m)] = -z.im;
            emb[(i + m) * n + j] = z.im;
        }
    }
    let mut vals = jacobi_eigen(&emb, n, false)?.values;
    vals.sort_by(f64::total_cmp);
    Ok(vals.into_iter().step_by(2).collect())
}

/// Sparse Hermitian matrix given by its upper-triangle entries.
#[derive(Clone, Debug, Default)]
pub struct SparseHermitian {
    pub dim: usize,
    pub entries: Vec<(usize, usize, Complex64)>,
}

impl SparseHermitian {
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let pattern: Vec<(usize, usize)> = self.entries.iter().map(|&(i, j, _)| (i, j)).collect();
        let values: Vec<Complex64> = self.entries.iter().map(|&(_, _, v)| v).collect();
        SpectralLayout::new(self.dim, &pattern)?.eigenvalues(&values)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
