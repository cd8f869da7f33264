//! Laplacian eigendecomposition, eigenprojectors and the transition matrix
//! `U(t) = exp(-i t L)`.

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::LaplacianMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("invalid size {0}: need at least 2 vertices")]
    InvalidSize(usize),
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("Jacobi sweeps did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
}

/// Dense square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// # Panics
    /// If `data.len() != n * n`.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "expected {n}x{n} entries");
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn matmul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> RealMatrix {
        RealMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &RealMatrix) {
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += y;
        }
    }

    /// `max |self - other|` entrywise.
    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.data[i * n + j].powi(2);
                }
            }
        }
        s.sqrt()
    }
}

impl From<&LaplacianMatrix> for RealMatrix {
    fn from(l: &LaplacianMatrix) -> Self {
        RealMatrix::from_row_major(l.dim(), l.to_f64())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Eigenvalues closer than this are merged into one group. `None` uses
    /// `1e-8 * (1 + spectral radius)`.
    pub grouping_tol: Option<f64>,
    /// Convergence threshold on the off-diagonal Frobenius norm, relative to
    /// `max(1, ||A||_F)`.
    pub offdiag_tol: f64,
    pub max_sweeps: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            grouping_tol: None,
            offdiag_tol: 1e-12,
            max_sweeps: 100,
        }
    }
}

/// Distinct eigenvalues with grouped orthonormal eigenvectors and their
/// eigenprojectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    /// Columns are eigenvectors; group `r` occupies `groups[r]`.
    eigenvectors: RealMatrix,
    groups: Vec<Range<usize>>,
    projectors: Vec<RealMatrix>,
}

impl Spectrum {
    /// Groups sorted eigenpairs. `vectors` holds eigenvectors as columns in
    /// the same order as `values`.
    fn from_sorted_pairs(values: &[f64], vectors: RealMatrix, grouping_tol: f64) -> Self {
        let n = vectors.dim();
        let mut groups: Vec<Range<usize>> = Vec::new();
        for (i, &v) in values.iter().enumerate() {
            match groups.last_mut() {
                Some(g) if v - values[g.end - 1] <= grouping_tol => g.end = i + 1,
                _ => groups.push(i..i + 1),
            }
        }
        let eigenvalues = groups
            .iter()
            .map(|g| values[g.clone()].iter().sum::<f64>() / g.len() as f64)
            .collect();
        let multiplicities = groups.iter().map(|g| g.len()).collect();
        let projectors = groups
            .iter()
            .map(|g| {
                let mut f = RealMatrix::zeros(n);
                for c in g.clone() {
                    for i in 0..n {
                        let vi = vectors.get(i, c);
                        for j in 0..n {
                            f.data[i * n + j] += vi * vectors.get(j, c);
                        }
                    }
                }
                f
            })
            .collect();
        Self {
            eigenvalues,
            multiplicities,
            eigenvectors: vectors,
            groups,
            projectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvectors.dim()
    }

    /// Distinct eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn eigenvectors(&self) -> &RealMatrix {
        &self.eigenvectors
    }

    /// Eigenvector columns belonging to eigenvalue group `r`.
    pub fn group_columns(&self, r: usize) -> Range<usize> {
        self.groups[r].clone()
    }

    pub fn projectors(&self) -> &[RealMatrix] {
        &self.projectors
    }

    pub fn projector(&self, r: usize) -> &RealMatrix {
        &self.projectors[r]
    }

    /// Residuals of the projector algebra against the matrix `l`.
    pub fn residuals(&self, l: &RealMatrix) -> ProjectorResiduals {
        let n = self.dim();
        let mut res = ProjectorResiduals::default();
        let mut sum = RealMatrix::zeros(n);
        let mut weighted = RealMatrix::zeros(n);
        for (r, f) in self.projectors.iter().enumerate() {
            res.idempotence = res.idempotence.max(f.matmul(f).max_abs_diff(f));
            for g in &self.projectors[r + 1..] {
                res.orthogonality = res.orthogonality.max(f.matmul(g).max_abs());
            }
            sum.add_assign(f);
            weighted.add_assign(&f.scaled(self.eigenvalues[r]));
        }
        res.completeness = sum.max_abs_diff(&RealMatrix::identity(n));
        res.reconstruction = weighted.max_abs_diff(l);
        res
    }
}

/// Max-norm residuals of `F² - F`, `F_r F_s`, `ΣF - I` and `ΣθF - L`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ProjectorResiduals {
    pub idempotence: f64,
    pub orthogonality: f64,
    pub completeness: f64,
    pub reconstruction: f64,
}

impl ProjectorResiduals {
    pub fn max(&self) -> f64 {
        self.idempotence
            .max(self.orthogonality)
            .max(self.completeness)
            .max(self.reconstruction)
    }
}

/// Closed-form spectrum of the path `P_n`: `θ_k = 2 - 2cos(kπ/n)` with
/// eigenvector entries proportional to `cos((2u-1)kπ/2n)`, `k = 0..n-1`.
pub fn path_spectrum(n: usize) -> Result<Spectrum, SpectraError> {
    if n < 2 {
        return Err(SpectraError::InvalidSize(n));
    }
    let nf = n as f64;
    let values: Vec<f64> = (0..n)
        .map(|k| 4.0 * (k as f64 * PI / (2.0 * nf)).sin().powi(2))
        .collect();
    let mut vectors = RealMatrix::zeros(n);
    let ones = 1.0 / nf.sqrt();
    let scale = (2.0 / nf).sqrt();
    for u in 0..n {
        vectors.set(u, 0, ones);
        for k in 1..n {
            let angle = ((2 * u + 1) * k) as f64 * PI / (2.0 * nf);
            vectors.set(u, k, scale * angle.cos());
        }
    }
    // simple spectrum: every group is a singleton
    Ok(Spectrum::from_sorted_pairs(&values, vectors, 0.0))
}

/// Cyclic Jacobi eigensolver for a symmetric matrix. Returns unsorted
/// eigenvalues and the accumulated rotation (eigenvectors as columns).
pub fn jacobi_eigen(
    a: &RealMatrix,
    offdiag_tol: f64,
    max_sweeps: usize,
) -> Result<(Vec<f64>, RealMatrix), SpectraError> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..i {
            let gap = (a.get(i, j) - a.get(j, i)).abs();
            if gap > 1e-12 * (1.0 + a.get(i, j).abs()) {
                return Err(SpectraError::NotSymmetric { i, j, gap });
            }
        }
    }
    let mut m = a.clone();
    let mut v = RealMatrix::identity(n);
    let threshold = offdiag_tol * m.frobenius().max(1.0);

    for _ in 0..max_sweeps {
        if m.off_diagonal_norm() <= threshold {
            let values = (0..n).map(|i| m.get(i, i)).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let residual = m.off_diagonal_norm();
    if residual <= threshold {
        let values = (0..n).map(|i| m.get(i, i)).collect();
        return Ok((values, v));
    }
    Err(SpectraError::NoConvergence {
        sweeps: max_sweeps,
        residual,
    })
}

/// Full spectral decomposition of a symmetric matrix with eigenvalue
/// grouping and sign-canonical eigenvectors.
pub fn eigendecompose(a: &RealMatrix, opts: &EigenOptions) -> Result<Spectrum, SpectraError> {
    let n = a.dim();
    let (values, vectors) = jacobi_eigen(a, opts.offdiag_tol, opts.max_sweeps)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vectors = RealMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vectors.column(src);
        canonicalize_sign(&mut col);
        for (i, x) in col.into_iter().enumerate() {
            sorted_vectors.set(i, dst, x);
        }
    }

    let radius = sorted_values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let tol = opts.grouping_tol.unwrap_or(1e-8 * (1.0 + radius));
    Ok(Spectrum::from_sorted_pairs(&sorted_values, sorted_vectors, tol))
}

/// Eigendecomposition of a graph Laplacian with default options.
pub fn laplacian_spectrum(l: &LaplacianMatrix) -> Result<Spectrum, SpectraError> {
    eigendecompose(&RealMatrix::from(l), &EigenOptions::default())
}

/// Flips `v` so that its first entry of non-negligible magnitude is positive.
fn canonicalize_sign(v: &mut [f64]) {
    let scale = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if let Some(&first) = v.iter().find(|x| x.abs() > 1e-10 * scale) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// `U(t)` as a dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    time: f64,
    entries: Vec<Complex64>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    /// Product `self · other`; the time of the result is the sum of times.
    pub fn mul(&self, other: &TransitionMatrix) -> TransitionMatrix {
        let n = self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        TransitionMatrix {
            n,
            time: self.time + other.time,
            entries,
        }
    }

    pub fn max_abs_diff(&self, other: &TransitionMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U Uᴴ - I|` entrywise.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += self.get(i, k) * self.get(j, k).conj();
                }
                if i == j {
                    s -= 1.0;
                }
                worst = worst.max(s.norm());
            }
        }
        worst
    }
}

/// `U(t) = Σ_r exp(-i t θ_r) F_r`.
pub fn transition_matrix(s: &Spectrum, t: f64) -> TransitionMatrix {
    let n = s.dim();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (theta, f) in s.eigenvalues.iter().zip(&s.projectors) {
        let phase = Complex64::from_polar(1.0, -theta * t);
        for (e, &x) in entries.iter_mut().zip(&f.data) {
            *e += phase * x;
        }
    }
    TransitionMatrix { n, time: t, entries }
}
