//! Symmetric eigendecomposition and the spectral quantities derived from it:
//! the Laplacian pseudoinverse, its trace, resistance distances and the
//! Kirchhoff index.
//!
//! The decomposition itself is delegated to `nalgebra`'s symmetric QR
//! solver; everything here works on its output sorted ascending.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{build_laplacian, is_connected, Graph};

/// Eigenvalues of a symmetric matrix, ascending, together with how many of
/// them are treated as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
    pub zero_count: usize,
    pub zero_threshold: f64,
}

impl SpectralSummary {
    fn from_sorted(eigenvalues: Vec<f64>) -> Self {
        let n = eigenvalues.len();
        let scale = eigenvalues.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
        let zero_threshold = n as f64 * f64::EPSILON * scale;
        let zero_count = eigenvalues
            .iter()
            .filter(|v| v.abs() <= zero_threshold)
            .count();
        Self {
            eigenvalues,
            zero_count,
            zero_threshold,
        }
    }

    pub fn is_zero(&self, value: f64) -> bool {
        value.abs() <= self.zero_threshold
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Sum of `1/lambda` over the eigenvalues not classified as zero.
    pub fn pinv_trace(&self) -> f64 {
        self.eigenvalues
            .iter()
            .filter(|v| !self.is_zero(**v))
            .map(|v| v.recip())
            .sum()
    }
}

/// Eigenvalues plus orthonormal eigenvectors (one per column, same order).
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub summary: SpectralSummary,
    pub vectors: DMatrix<f64>,
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Contract(format!(
            "matrix is {}x{}, expected square",
            m.nrows(),
            m.ncols()
        )));
    }
    let scale = m.amax().max(f64::MIN_POSITIVE);
    let n = m.nrows();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (m[(i, j)] - m[(j, i)]).abs();
            #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
            if !(gap <= 1e-12 * scale) {
                return Err(Error::Contract(format!(
                    "matrix is not symmetric at ({i}, {j}): {} vs {}",
                    m[(i, j)],
                    m[(j, i)]
                )));
            }
        }
    }
    Ok(())
}

/// Eigenvalues only; the hot path of the Monte Carlo runs.
pub fn spectrum(m: &DMatrix<f64>) -> Result<SpectralSummary> {
    check_symmetric(m)?;
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(SpectralSummary::from_sorted(values))
}

/// Full decomposition with eigenpairs sorted by ascending eigenvalue.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<SymmetricEigen> {
    check_symmetric(m)?;
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |i, c| eig.eigenvectors[(i, order[c])]);
    Ok(SymmetricEigen {
        summary: SpectralSummary::from_sorted(values),
        vectors,
    })
}

/// Largest absolute eigenvalue.
pub fn operator_norm(m: &DMatrix<f64>) -> Result<f64> {
    Ok(spectrum(m)?.max_abs())
}

/// `trace(L^+)` without forming the pseudoinverse. Finite for every graph;
/// on a disconnected graph it is the sum over components.
pub fn trace_pinv(laplacian: &DMatrix<f64>) -> Result<f64> {
    Ok(spectrum(laplacian)?.pinv_trace())
}

/// Moore-Penrose pseudoinverse of a graph Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoInverse(DMatrix<f64>);

impl PseudoInverse {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// `L+_ii + L+_jj - 2 L+_ij`, and 0 when `i == j`.
    ///
    /// Only meaningful when `i` and `j` lie in the same component; callers
    /// must check connectivity first.
    pub fn resistance_distance(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let m = &self.0;
        m[(i, i)] + m[(j, j)] - 2.0 * m[(i, j)]
    }

    /// Full symmetric matrix of pairwise resistance distances.
    pub fn resistance_matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.resistance_distance(i, j))
    }
}

/// `U diag(lambda^+) U^T`, with `lambda^+ = 0` on the numerical kernel.
pub fn pseudo_inverse(laplacian: &DMatrix<f64>) -> Result<PseudoInverse> {
    let eig = symmetric_eigen(laplacian)?;
    let n = laplacian.nrows();
    let mut scaled = eig.vectors.clone();
    for (c, &value) in eig.summary.eigenvalues.iter().enumerate() {
        let inv = if eig.summary.is_zero(value) {
            0.0
        } else {
            value.recip()
        };
        scaled.column_mut(c).scale_mut(inv);
    }
    let mut pinv = &scaled * eig.vectors.transpose();
    // Restore exact symmetry lost to rounding in the product.
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (pinv[(i, j)] + pinv[(j, i)]);
            pinv[(i, j)] = avg;
            pinv[(j, i)] = avg;
        }
    }
    Ok(PseudoInverse(pinv))
}

/// `n * trace(L^+)` for connected graphs, `f64::INFINITY` otherwise.
pub fn kirchhoff_index(g: &Graph) -> f64 {
    if !is_connected(g) {
        return f64::INFINITY;
    }
    let lap = build_laplacian(g);
    let trace = trace_pinv(&lap).expect("graph Laplacians are symmetric");
    g.node_count() as f64 * trace
}
