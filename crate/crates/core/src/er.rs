//! Erdős–Rényi sampling and the random-matrix quantities attached to a draw:
//! the centered Laplacian, the scaled statistic `p * trace(L^+)` and the
//! spectral event on the centered Laplacian's norm.
//!
//! Sampling uses ChaCha8 (`rand_chacha` 0.9) seeded through
//! `SeedableRng::seed_from_u64`. Pairs `(i, j)`, `i < j`, are visited in
//! lexicographic order and each consumes exactly one `f64` uniform in
//! `[0, 1)`; the edge is present when the variate is below `p`. The mapping
//! from `(n, p, seed)` to a graph is therefore fixed and platform independent.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{build_laplacian, is_connected, Graph};
use crate::spectral::{operator_norm, spectrum, trace_pinv};

/// Parameters of a single `G(n, p)` draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl ErParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        check_n(n)?;
        check_p(p)?;
        Ok(Self { n, p, seed })
    }

    /// `p(1 - p)`, the variance of a centered edge indicator.
    pub fn variance(&self) -> f64 {
        self.p * (1.0 - self.p)
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Contract(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Contract(format!("need 0 < p < 1, got {p}")));
    }
    Ok(())
}

pub fn sample_er(params: &ErParams) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut g = Graph::empty(params.n).expect("ErParams guarantees n >= 2");
    for i in 0..params.n {
        for j in i + 1..params.n {
            let u: f64 = rng.random();
            if u < params.p {
                g.set_edge(i, j, true);
            }
        }
    }
    g
}

/// `L - p (n I - 1 1^T)`: the fluctuation of the Laplacian around its mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredLaplacian {
    p: f64,
    matrix: DMatrix<f64>,
}

impl CenteredLaplacian {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn operator_norm(&self) -> f64 {
        operator_norm(&self.matrix).expect("centered Laplacian is symmetric")
    }
}

/// Off-diagonal entries are `p - A_ij`; each diagonal entry is minus the sum
/// of its row's off-diagonal entries, so row sums vanish exactly when summed
/// in column order.
pub fn centered_laplacian(g: &Graph, p: f64) -> Result<CenteredLaplacian> {
    check_p(p)?;
    let n = g.node_count();
    let mut matrix = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut off = 0.0;
        for j in 0..n {
            if i != j {
                let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                let v = p - a;
                matrix[(i, j)] = v;
                off += v;
            }
        }
        matrix[(i, i)] = -off;
    }
    Ok(CenteredLaplacian { p, matrix })
}

/// `p * trace(L^+)`. Finite for disconnected graphs too.
pub fn xn_statistic(g: &Graph, p: f64) -> f64 {
    p * trace_pinv(&build_laplacian(g)).expect("graph Laplacians are symmetric")
}

/// `5 sqrt(n p ln n)`.
pub fn event_threshold(n: usize, p: f64) -> f64 {
    let n = n as f64;
    5.0 * (n * p * n.ln()).sqrt()
}

/// Whether `||L1||_op <= 5 sqrt(n p ln n)`.
pub fn check_event_en(l1: &CenteredLaplacian, n: usize, p: f64) -> bool {
    l1.operator_norm() <= event_threshold(n, p)
}

/// `trace(L1^k)` for `k` in `1..=4`, summed over the eigenvalues of `L1`.
pub fn l1_trace_power(l1: &CenteredLaplacian, k: u32) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(Error::Contract(format!(
            "trace power k must be in 1..=4, got {k}"
        )));
    }
    let s = spectrum(l1.matrix()).expect("centered Laplacian is symmetric");
    Ok(s.eigenvalues.iter().map(|t| t.powi(k as i32)).sum())
}

/// Everything the experiment needs from one draw, from a single eigensolve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrawSummary {
    pub xn: f64,
    pub connected: bool,
    pub l1_norm: f64,
    pub event_en: bool,
}

/// Computes `X_n`, connectivity and `||L1||_op` from the spectrum of `L`.
///
/// `L` and `L0 = p (n I - 1 1^T)` share the eigenvector `1`, and `L0` acts as
/// `n p` on its orthogonal complement. Dropping one zero eigenvalue of `L`
/// and shifting the rest by `-n p` therefore gives the nonzero part of the
/// spectrum of `L1`, so no second decomposition is needed.
pub fn summarize_draw(g: &Graph, p: f64) -> DrawSummary {
    let n = g.node_count();
    let s = spectrum(&build_laplacian(g)).expect("graph Laplacians are symmetric");
    let np = n as f64 * p;
    let l1_norm = s.eigenvalues[1..]
        .iter()
        .fold(0.0_f64, |acc, v| acc.max((v - np).abs()));
    DrawSummary {
        xn: p * s.pinv_trace(),
        connected: is_connected(g),
        l1_norm,
        event_en: l1_norm <= event_threshold(n, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rows(r: &[&[f64]]) -> DMatrix<f64> {
        DMatrix::from_fn(r.len(), r.len(), |i, j| r[i][j])
    }

    #[test]
    fn params_are_validated() {
        assert!(ErParams::new(1, 0.5, 0).is_err());
        assert!(ErParams::new(5, 0.0, 0).is_err());
        assert!(ErParams::new(5, 1.0, 0).is_err());
        assert!(ErParams::new(5, f64::NAN, 0).is_err());
        assert!(ErParams::new(5, 0.3, 0).is_ok());
    }

    #[test]
    fn sampling_is_deterministic() {
        let params = ErParams::new(60, 0.3, 1234).unwrap();
        assert_eq!(sample_er(&params), sample_er(&params));
        let other = ErParams {
            seed: 1235,
            ..params
        };
        assert_ne!(sample_er(&params), sample_er(&other));
    }

    #[test]
    fn edge_count_near_binomial_mean() {
        let g = sample_er(&ErParams::new(100, 0.5, 7).unwrap());
        let sd = (4950.0_f64 * 0.25).sqrt();
        assert!((g.edge_count() as f64 - 2475.0).abs() <= 4.0 * sd);
    }

    #[test]
    fn centered_laplacian_small_cases() {
        let empty = centered_laplacian(&Graph::empty(2).unwrap(), 0.5).unwrap();
        assert_eq!(empty.matrix(), &rows(&[&[-0.5, 0.5], &[0.5, -0.5]]));
        let full = centered_laplacian(&Graph::complete(2).unwrap(), 0.5).unwrap();
        assert_eq!(full.matrix(), &rows(&[&[0.5, -0.5], &[-0.5, 0.5]]));
        assert!(centered_laplacian(&Graph::empty(2).unwrap(), 1.5).is_err());
    }

    #[test]
    fn centered_laplacian_rows_sum_to_zero() {
        let g = sample_er(&ErParams::new(40, 0.37, 3).unwrap());
        let l1 = centered_laplacian(&g, 0.37).unwrap();
        let m = l1.matrix();
        for i in 0..40 {
            let off: f64 = (0..40).filter(|&j| j != i).map(|j| m[(i, j)]).sum();
            assert_eq!(off + m[(i, i)], 0.0);
        }
        assert!(l1.operator_norm() <= 2.0 * 39.0);
    }

    #[test]
    fn xn_examples() {
        assert_relative_eq!(
            xn_statistic(&Graph::complete(4).unwrap(), 0.3),
            0.225,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            xn_statistic(&Graph::path(3).unwrap(), 0.5),
            2.0 / 3.0,
            max_relative = 1e-12
        );
        assert_eq!(xn_statistic(&Graph::empty(5).unwrap(), 0.5), 0.0);
    }

    #[test]
    fn event_examples() {
        // Complete graph: L1 = (1 - p)(n I - 1 1^T), norm (1 - p) n = 50 <= 75.87.
        let k = centered_laplacian(&Graph::complete(100).unwrap(), 0.5).unwrap();
        assert_relative_eq!(k.operator_norm(), 50.0, max_relative = 1e-10);
        assert!(check_event_en(&k, 100, 0.5));
        // Empty graph: L1 = -p (n I - 1 1^T), norm p n = 50.
        let e = centered_laplacian(&Graph::empty(100).unwrap(), 0.5).unwrap();
        assert_relative_eq!(e.operator_norm(), 50.0, max_relative = 1e-10);
        assert!(check_event_en(&e, 100, 0.5));
        // Threshold at n = 10, p = 0.1 is 5 sqrt(ln 10) < 18 = 2(n - 1).
        assert_relative_eq!(
            event_threshold(10, 0.1),
            5.0 * 10f64.ln().sqrt(),
            max_relative = 1e-15
        );
        assert!(event_threshold(10, 0.1) < 18.0);
    }

    #[test]
    fn trace_powers_match_matrix_identities() {
        let g = sample_er(&ErParams::new(12, 0.4, 99).unwrap());
        let l1 = centered_laplacian(&g, 0.4).unwrap();
        let m = l1.matrix();
        assert_relative_eq!(l1_trace_power(&l1, 1).unwrap(), m.trace(), epsilon = 1e-10);
        assert_relative_eq!(
            l1_trace_power(&l1, 2).unwrap(),
            m.norm_squared(),
            max_relative = 1e-10
        );
        assert_relative_eq!(
            l1_trace_power(&l1, 3).unwrap(),
            (m * m * m).trace(),
            epsilon = 1e-8
        );
        assert!(l1_trace_power(&l1, 0).is_err());
        assert!(l1_trace_power(&l1, 5).is_err());
    }

    #[test]
    fn draw_summary_agrees_with_direct_computation() {
        for (seed, n, p) in [(1, 30, 0.2), (2, 25, 0.5), (3, 40, 0.05), (4, 20, 0.9)] {
            let g = sample_er(&ErParams::new(n, p, seed).unwrap());
            let s = summarize_draw(&g, p);
            let l1 = centered_laplacian(&g, p).unwrap();
            assert_relative_eq!(s.xn, xn_statistic(&g, p), max_relative = 1e-10);
            assert_relative_eq!(s.l1_norm, l1.operator_norm(), max_relative = 1e-10);
            assert_eq!(s.connected, is_connected(&g));
            assert_eq!(s.event_en, check_event_en(&l1, n, p));
        }
    }
}
