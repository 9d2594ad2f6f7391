//! Principal component analysis via eigendecomposition of the sample
//! covariance matrix.

use alloc::vec;
use alloc::vec::Vec;

use super::AnalysisError;
use crate::matrix::Matrix;

/// Result of projecting an n x D matrix onto its top principal components.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaResult {
    /// n x n_components projected coordinates of the mean-centered rows.
    pub projections: Matrix,
    /// n_components x D orthonormal component rows, sign-fixed so each row's
    /// largest-magnitude coordinate is positive.
    pub components: Matrix,
    /// Sample variance captured by each component, non-increasing.
    pub explained_variance: Vec<f64>,
    /// Column means subtracted before projection.
    pub mean: Vec<f64>,
}

/// Mean-centered PCA. The covariance uses the n-1 divisor; components are
/// the top eigenvectors of the covariance matrix.
pub fn pca_project(matrix: &Matrix, n_components: usize) -> Result<PcaResult, AnalysisError> {
    let (n, d) = matrix.shape();
    if n < 2 {
        return Err(AnalysisError::TooFewRows { rows: n });
    }
    let max_components = n.min(d);
    if n_components == 0 || n_components > max_components {
        return Err(AnalysisError::ComponentCount {
            requested: n_components,
            max: max_components,
        });
    }

    let mut mean = vec![0.0; d];
    for row in matrix.iter_rows() {
        for (acc, value) in mean.iter_mut().zip(row) {
            *acc += value;
        }
    }
    for value in &mut mean {
        *value /= n as f64;
    }

    let centered = Matrix::from_fn(n, d, |r, c| matrix.get(r, c) - mean[c]);

    // Sample covariance, n-1 divisor.
    let mut covariance = Matrix::zeros(d, d);
    for row in centered.iter_rows() {
        for i in 0..d {
            let cov_row = covariance.row_mut(i);
            for j in 0..d {
                cov_row[j] += row[i] * row[j];
            }
        }
    }
    let divisor = (n - 1) as f64;
    for value in covariance.as_mut_slice() {
        *value /= divisor;
    }

    let (eigenvalues, eigenvectors) = symmetric_eigen(&covariance);

    // Top components by descending eigenvalue; stable order on ties.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eigenvalues[b].total_cmp(&eigenvalues[a]));

    let mut components = Matrix::zeros(n_components, d);
    let mut explained_variance = Vec::with_capacity(n_components);
    for (row, &source) in order.iter().take(n_components).enumerate() {
        // Rounding can push tiny eigenvalues of a PSD matrix below zero.
        explained_variance.push(eigenvalues[source].max(0.0));
        let component = components.row_mut(row);
        for (col, value) in component.iter_mut().enumerate() {
            *value = eigenvectors.get(col, source);
        }
        fix_sign(component);
    }

    let projections = Matrix::from_fn(n, n_components, |r, c| {
        crate::matrix::dot(centered.row(r), components.row(c))
    });

    Ok(PcaResult {
        projections,
        components,
        explained_variance,
        mean,
    })
}

/// Flips a component so its largest-magnitude coordinate is positive.
/// Ties keep the lowest index.
fn fix_sign(component: &mut [f64]) {
    let mut lead = 0;
    for (i, value) in component.iter().enumerate() {
        if libm::fabs(*value) > libm::fabs(component[lead]) {
            lead = i;
        }
    }
    if component[lead] < 0.0 {
        for value in component.iter_mut() {
            *value = -*value;
        }
    }
}

const MAX_JACOBI_SWEEPS: usize = 64;

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues and the orthogonal matrix whose columns are the
/// matching eigenvectors. Converges to machine precision for the small
/// covariance matrices PCA produces here.
fn symmetric_eigen(symmetric: &Matrix) -> (Vec<f64>, Matrix) {
    let d = symmetric.rows();
    debug_assert_eq!(symmetric.cols(), d);
    let mut a = symmetric.clone();
    let mut vectors = Matrix::from_fn(d, d, |r, c| if r == c { 1.0 } else { 0.0 });

    let frobenius_sq: f64 = a.as_slice().iter().map(|v| v * v).sum();
    let threshold = frobenius_sq * 1e-30;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off_diagonal_sq = 0.0;
        for p in 0..d {
            for q in (p + 1)..d {
                let v = a.get(p, q);
                off_diagonal_sq += v * v;
            }
        }
        if off_diagonal_sq <= threshold {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let tau = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    1.0 / (tau - libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;

                // A <- G^T A G for the (p, q) rotation.
                for k in 0..d {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..d {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..d {
                    let vkp = vectors.get(k, p);
                    let vkq = vectors.get(k, q);
                    vectors.set(k, p, c * vkp - s * vkq);
                    vectors.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let eigenvalues = (0..d).map(|i| a.get(i, i)).collect();
    (eigenvalues, vectors)
}
