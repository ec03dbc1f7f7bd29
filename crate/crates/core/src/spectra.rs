//! Full eigendecomposition of normalised adjacency operators.
//!
//! The solver is the cyclic Jacobi method with threshold rotations: every
//! sweep visits each off-diagonal pair once and annihilates it, and the
//! decomposition is accepted once the off-diagonal Frobenius mass falls
//! below the requested tolerance.

use thiserror::Error;

use crate::graph::NormalizedOperator;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("matrix is not symmetric: |M[{row}][{col}] - M[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },
    #[error("Jacobi iteration did not converge within {max_iterations} sweeps")]
    NoConvergence { max_iterations: usize },
    #[error("spectrum has {n} eigenvalues, the request needs at least {needed}")]
    TooSmall { n: usize, needed: usize },
    #[error("graph is disconnected (t2 = {t2})")]
    Disconnected { t2: f64 },
}

/// Eigenvalues of `T` sorted descending, with the matching orthonormal
/// eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    adjacency: Vec<f64>,
    laplacian: Vec<f64>,
    // column-major: column k is the eigenvector of adjacency[k]
    vectors: Vec<f64>,
    tol: f64,
}

/// Jacobi eigendecomposition of a symmetric row-major matrix. Returns the
/// unsorted eigenvalues and the column-major eigenvector matrix.
pub fn jacobi_eigen(
    matrix: &[f64],
    n: usize,
    tol: f64,
    max_sweeps: usize,
) -> Result<(Vec<f64>, Vec<f64>), SpectraError> {
    assert_eq!(matrix.len(), n * n, "matrix must be n×n");
    let mut a = matrix.to_vec();
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };

    let scale = matrix.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let target = (tol * 1e-3).max(f64::EPSILON * scale);
    let mut sweeps = 0;
    while off_norm(&a) > target {
        if sweeps == max_sweeps {
            if off_norm(&a) <= tol {
                break;
            }
            return Err(SpectraError::NoConvergence {
                max_iterations: max_sweeps,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for r in (p + 1)..n {
                let apq = a[p * n + r];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[r * n + r];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + r];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + r] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[r * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[r * n + k] = s * apk + c * aqk;
                }
                a[p * n + r] = 0.0;
                a[r * n + p] = 0.0;

                for k in 0..n {
                    let qkp = q[k * n + p];
                    let qkq = q[k * n + r];
                    q[k * n + p] = c * qkp - s * qkq;
                    q[k * n + r] = s * qkp + c * qkq;
                }
            }
        }
    }

    let values = (0..n).map(|i| a[i * n + i]).collect();
    // row-major q has eigenvector i in column i; transpose to column-major
    let mut cols = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            cols[i * n + k] = q[k * n + i];
        }
    }
    Ok((values, cols))
}

/// Decomposes a normalised operator. Symmetry is checked to within `tol`.
pub fn eig_symmetric(op: &NormalizedOperator, tol: f64) -> Result<Spectrum, SpectraError> {
    let n = op.n();
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (op.get(i, j) - op.get(j, i)).abs();
            if gap > tol {
                return Err(SpectraError::NotSymmetric { row: i, col: j, gap });
            }
        }
    }
    let (values, vectors) = jacobi_eigen(op.entries(), n, tol, MAX_SWEEPS)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let adjacency: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut sorted_vectors = Vec::with_capacity(n * n);
    for &k in &order {
        sorted_vectors.extend_from_slice(&vectors[k * n..(k + 1) * n]);
    }
    let laplacian = adjacency.iter().map(|t| 1.0 - t).collect();
    Ok(Spectrum {
        adjacency,
        laplacian,
        vectors: sorted_vectors,
        tol,
    })
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `t_1 >= t_2 >= ... >= t_n`.
    pub fn adjacency_eigs(&self) -> &[f64] {
        &self.adjacency
    }

    /// `λ_1 <= ... <= λ_n` with `λ_i = 1 - t_i`.
    pub fn laplacian_eigs(&self) -> &[f64] {
        &self.laplacian
    }

    /// Unit eigenvector for `t_k` (zero-based `k`).
    pub fn eigenvector(&self, k: usize) -> &[f64] {
        let n = self.n();
        &self.vectors[k * n..(k + 1) * n]
    }

    /// Eigenvector for `t_2`, used by the spectral sweep.
    pub fn fiedler_vector(&self) -> Result<&[f64], SpectraError> {
        self.need(2)?;
        Ok(self.eigenvector(1))
    }

    fn need(&self, needed: usize) -> Result<(), SpectraError> {
        if self.n() < needed {
            Err(SpectraError::TooSmall { n: self.n(), needed })
        } else {
            Ok(())
        }
    }

    pub fn largest(&self) -> Result<f64, SpectraError> {
        self.need(1)?;
        Ok(self.adjacency[0])
    }

    pub fn second_largest(&self) -> Result<f64, SpectraError> {
        self.need(2)?;
        Ok(self.adjacency[1])
    }

    pub fn smallest(&self) -> Result<f64, SpectraError> {
        self.need(1)?;
        Ok(self.adjacency[self.n() - 1])
    }

    pub fn laplacian_largest(&self) -> Result<f64, SpectraError> {
        self.need(1)?;
        Ok(self.laplacian[self.n() - 1])
    }

    pub fn laplacian_second(&self) -> Result<f64, SpectraError> {
        self.need(2)?;
        Ok(self.laplacian[1])
    }

    /// `t_2 < 1 - tol`; a single vertex counts as connected.
    pub fn is_connected_spectral(&self, tol: f64) -> bool {
        match self.second_largest() {
            Ok(t2) => t2 < 1.0 - tol,
            Err(_) => true,
        }
    }

    /// `t_n <= -1 + tol`, defined only for connected graphs.
    pub fn is_bipartite_spectral(&self, tol: f64) -> Result<bool, SpectraError> {
        if !self.is_connected_spectral(tol) {
            return Err(SpectraError::Disconnected {
                t2: self.adjacency[1],
            });
        }
        if self.n() == 1 {
            return Ok(false);
        }
        Ok(self.smallest()? <= -1.0 + tol)
    }

    /// `max |M Q - Q Λ|` over all entries.
    pub fn reconstruction_residual(&self, op: &NormalizedOperator) -> f64 {
        let n = self.n();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let v = self.eigenvector(k);
            let lambda = self.adjacency[k];
            for i in 0..n {
                let mv: f64 = (0..n).map(|j| op.get(i, j) * v[j]).sum();
                worst = worst.max((mv - lambda * v[i]).abs());
            }
        }
        worst
    }

    /// `max |Q^T Q - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = self
                    .eigenvector(a)
                    .iter()
                    .zip(self.eigenvector(b))
                    .map(|(x, y)| x * y)
                    .sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        self.adjacency.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.adjacency.iter().map(|t| t * t).sum()
    }
}
