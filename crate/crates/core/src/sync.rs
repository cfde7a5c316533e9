//! Synchronization of translations on a measurement graph.
//!
//! Each edge `{i, j}`, `i < j`, carries `h_ij = x_i - x_j + noise` with
//! isotropic Gaussian noise `N(0, sigma2 * I_d)`. The least-squares estimate
//! solves `L x = b` per axis through the Laplacian pseudoinverse and is
//! efficient: its expected squared error equals `d * sigma2 * trace(L^+)`.
//!
//! Randomness: the truth comes from ChaCha8 stream 0 of the problem seed,
//! and the noise of trial `t` from stream `t + 1`. Trial 0 of
//! [`crb_experiment`] is exactly the problem returned by
//! [`sample_sync_problem`] for the same seed.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{build_laplacian, is_connected, Graph};
use crate::spectral::{pseudo_inverse, PseudoInverse};
use crate::theory::crb_lower_bound;

const TRIAL_CHUNK: usize = 256;

/// One synchronization instance. `truth` and `measurements` are stored one
/// row per node and one row per edge respectively, `d` columns each.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncProblem {
    pub graph: Graph,
    pub d: usize,
    pub sigma2: f64,
    pub truth: DMatrix<f64>,
    /// Edges in the order of [`Graph::edges`].
    pub edges: Vec<(usize, usize)>,
    /// Row `k` is `h_ij` for `edges[k] = (i, j)`; `h_ji` is its negation.
    pub measurements: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyncEstimate {
    pub estimates: DMatrix<f64>,
    pub residual_sq: f64,
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_inputs(g: &Graph, d: usize, sigma2: f64) -> Result<()> {
    if d == 0 {
        return Err(Error::Contract("dimension d must be at least 1".into()));
    }
    if !(sigma2 >= 0.0 && sigma2.is_finite()) {
        return Err(Error::Contract(format!("need sigma2 >= 0, got {sigma2}")));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn center_rows(m: &mut DMatrix<f64>) {
    let n = m.nrows() as f64;
    for mut col in m.column_iter_mut() {
        let mean = col.sum() / n;
        col.add_scalar_mut(-mean);
    }
}

fn sample_truth(n: usize, d: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = stream_rng(seed, 0);
    let mut truth = DMatrix::from_fn(n, d, |_, _| StandardNormal.sample(&mut rng));
    center_rows(&mut truth);
    truth
}

fn sample_measurements(
    truth: &DMatrix<f64>,
    edges: &[(usize, usize)],
    sigma2: f64,
    rng: &mut ChaCha8Rng,
) -> DMatrix<f64> {
    let d = truth.ncols();
    let sd = sigma2.sqrt();
    let mut h = DMatrix::zeros(edges.len(), d);
    for (k, &(i, j)) in edges.iter().enumerate() {
        for a in 0..d {
            let noise: f64 = StandardNormal.sample(rng);
            h[(k, a)] = truth[(i, a)] - truth[(j, a)] + sd * noise;
        }
    }
    h
}

/// Draws a centered standard-normal truth and one noisy measurement per edge.
pub fn sample_sync_problem(g: &Graph, d: usize, sigma2: f64, seed: u64) -> Result<SyncProblem> {
    check_inputs(g, d, sigma2)?;
    let truth = sample_truth(g.node_count(), d, seed);
    let edges: Vec<_> = g.edges().collect();
    let measurements = sample_measurements(&truth, &edges, sigma2, &mut stream_rng(seed, 1));
    Ok(SyncProblem {
        graph: g.clone(),
        d,
        sigma2,
        truth,
        edges,
        measurements,
    })
}

/// Right-hand side of the normal equations: `b_i = sum_j h_ij`.
fn normal_rhs(n: usize, edges: &[(usize, usize)], h: &DMatrix<f64>) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(n, h.ncols());
    for (k, &(i, j)) in edges.iter().enumerate() {
        for a in 0..h.ncols() {
            b[(i, a)] += h[(k, a)];
            b[(j, a)] -= h[(k, a)];
        }
    }
    b
}

fn estimate_with(
    pinv: &PseudoInverse,
    truth: &DMatrix<f64>,
    edges: &[(usize, usize)],
    h: &DMatrix<f64>,
) -> SyncEstimate {
    let b = normal_rhs(truth.nrows(), edges, h);
    let mut estimates = pinv.matrix() * b;
    center_rows(&mut estimates);
    let residual_sq = (truth - &estimates).norm_squared();
    SyncEstimate {
        estimates,
        residual_sq,
    }
}

/// Least-squares (maximum likelihood) estimate `L^+ b`, centered.
pub fn mle_estimate(problem: &SyncProblem) -> Result<SyncEstimate> {
    let pinv = pseudo_inverse(&build_laplacian(&problem.graph))?;
    Ok(estimate_with(
        &pinv,
        &problem.truth,
        &problem.edges,
        &problem.measurements,
    ))
}

/// Outcome of repeated noise draws on a fixed graph and truth.
#[derive(Debug, Clone, PartialEq)]
pub struct CrbReport {
    pub trials: usize,
    pub empirical_mse: f64,
    /// Standard error of `empirical_mse`.
    pub mse_std_error: f64,
    pub crb: f64,
    /// `empirical_mse / crb`, or 1 when the bound is 0.
    pub ratio: f64,
    /// Mean of `x_hat - x` per node and axis.
    pub mean_error: DMatrix<f64>,
    /// Standard error of `mean_error`, from the sample standard deviation.
    pub std_error: DMatrix<f64>,
}

impl CrbReport {
    /// Largest `|mean_error| / std_error` over all coordinates. Coordinates
    /// with zero spread (noiseless runs) contribute 0.
    pub fn max_bias_z(&self) -> f64 {
        self.mean_error
            .iter()
            .zip(self.std_error.iter())
            .map(|(m, s)| if *s > 0.0 { m.abs() / s } else { 0.0 })
            .fold(0.0, f64::max)
    }
}

struct Partial {
    residual: f64,
    residual_sq: f64,
    err: DMatrix<f64>,
    err_sq: DMatrix<f64>,
}

impl Partial {
    fn zeros(n: usize, d: usize) -> Self {
        Self {
            residual: 0.0,
            residual_sq: 0.0,
            err: DMatrix::zeros(n, d),
            err_sq: DMatrix::zeros(n, d),
        }
    }

    fn absorb(&mut self, other: &Partial) {
        self.residual += other.residual;
        self.residual_sq += other.residual_sq;
        self.err += &other.err;
        self.err_sq += &other.err_sq;
    }
}

/// Runs `trials` independent noise draws and compares the mean squared error
/// of the least-squares estimate with `d * sigma2 * trace(L^+)`.
///
/// Trials are processed in fixed-size chunks whose partial sums are combined
/// in chunk order, so the result does not depend on the thread count.
pub fn crb_experiment(
    g: &Graph,
    d: usize,
    sigma2: f64,
    trials: usize,
    seed: u64,
) -> Result<CrbReport> {
    check_inputs(g, d, sigma2)?;
    if trials == 0 {
        return Err(Error::Contract("trials must be at least 1".into()));
    }
    let n = g.node_count();
    let pinv = pseudo_inverse(&build_laplacian(g))?;
    let truth = sample_truth(n, d, seed);
    let edges: Vec<_> = g.edges().collect();

    let chunks: Vec<Partial> = (0..trials.div_ceil(TRIAL_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = Partial::zeros(n, d);
            for t in c * TRIAL_CHUNK..((c + 1) * TRIAL_CHUNK).min(trials) {
                let mut rng = stream_rng(seed, t as u64 + 1);
                let h = sample_measurements(&truth, &edges, sigma2, &mut rng);
                let est = estimate_with(&pinv, &truth, &edges, &h);
                let err = est.estimates - &truth;
                acc.residual += est.residual_sq;
                acc.residual_sq += est.residual_sq * est.residual_sq;
                acc.err_sq += err.component_mul(&err);
                acc.err += err;
            }
            acc
        })
        .collect();
    let mut total = Partial::zeros(n, d);
    for chunk in &chunks {
        total.absorb(chunk);
    }

    let t = trials as f64;
    let empirical_mse = total.residual / t;
    let crb = crb_lower_bound(d as f64 * sigma2, pinv.trace())?;
    let ratio = if crb == 0.0 { 1.0 } else { empirical_mse / crb };
    let std_err = |sum_sq: f64, m: f64| {
        if trials < 2 {
            return 0.0;
        }
        (((sum_sq - t * m * m) / (t - 1.0)).max(0.0) / t).sqrt()
    };
    let mean_error = &total.err / t;
    let std_error = DMatrix::from_fn(n, d, |i, a| {
        std_err(total.err_sq[(i, a)], mean_error[(i, a)])
    });
    Ok(CrbReport {
        trials,
        empirical_mse,
        mse_std_error: std_err(total.residual_sq, empirical_mse),
        crb,
        ratio,
        mean_error,
        std_error,
    })
}
