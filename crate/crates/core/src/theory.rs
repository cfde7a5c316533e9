//! Closed-form predictions for `X_n = p * trace(L^+)` on `G(n, p)`.
//!
//! Every evaluator returns the leading terms only; the asymptotic remainder is
//! dropped, never estimated. Logarithms are natural.

use crate::er::{check_n, check_p};
use crate::error::{Error, Result};

/// Leading constant of the fluctuation band.
pub const FLUCTUATION_CONSTANT: f64 = 2.02;

/// Numerator of the `3.01 / n^k` failure terms.
pub const FAILURE_CONSTANT: f64 = 3.01;

/// `1 + (2 (1 - p) / p - 1) / n`. Dropped remainder: `O(ln^2 n / (n p)^2)`.
pub fn expected_xn(n: usize, p: f64) -> Result<f64> {
    check_n(n)?;
    check_p(p)?;
    Ok(1.0 + (2.0 * (1.0 - p) / p - 1.0) / n as f64)
}

fn check_power_law(gamma: f64, alpha: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Contract(format!("need gamma > 0, got {gamma}")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Contract(format!("need 0 < alpha <= 1, got {alpha}")));
    }
    if alpha == 1.0 && gamma >= 1.0 {
        return Err(Error::Contract(format!(
            "need gamma < 1 when alpha = 1, got {gamma}"
        )));
    }
    Ok(())
}

/// Edge probability `gamma * n^(alpha - 1)`.
pub fn power_law_p(n: usize, gamma: f64, alpha: f64) -> f64 {
    gamma * (n as f64).powf(alpha - 1.0)
}

/// `1 + 2 / (gamma n^alpha) - 3 / n` for `p = gamma n^(alpha - 1)`.
/// Dropped remainder: `O(ln^2 n / n^(2 alpha))`.
pub fn expected_xn_vanishing(n: usize, gamma: f64, alpha: f64) -> Result<f64> {
    check_n(n)?;
    check_power_law(gamma, alpha)?;
    let nf = n as f64;
    Ok(1.0 + 2.0 / (gamma * nf.powf(alpha)) - 3.0 / nf)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::Contract(format!(
            "need 0 < epsilon <= 1/2, got {epsilon}"
        )));
    }
    Ok(())
}

/// `2.02 sqrt(ln(1/epsilon)) / (n p)`.
pub fn fluctuation_bound(n: usize, p: f64, epsilon: f64) -> Result<f64> {
    check_n(n)?;
    check_p(p)?;
    check_epsilon(epsilon)?;
    Ok(FLUCTUATION_CONSTANT * (1.0 / epsilon).ln().sqrt() / (n as f64 * p))
}

/// `1 - 2 epsilon - 3.01 / n^4`, clamped to `[0, 1]`.
pub fn band_probability(n: usize, epsilon: f64) -> Result<f64> {
    check_n(n)?;
    check_epsilon(epsilon)?;
    let v = 1.0 - 2.0 * epsilon - FAILURE_CONSTANT / (n as f64).powi(4);
    Ok(v.clamp(0.0, 1.0))
}

/// `(n^2 - 1) / 6`, the largest `trace(L^+)` over graphs on `n` nodes,
/// attained by the path.
pub fn max_trace_pinv_bound(n: usize) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    Ok((nf * nf - 1.0) / 6.0)
}

/// `n / p + 2 / p^2 - 3 / p`. Dropped remainder: `O(ln^2 n / (p^3 n))`.
pub fn expected_kirchhoff(n: usize, p: f64) -> Result<f64> {
    check_n(n)?;
    check_p(p)?;
    Ok(n as f64 / p + 2.0 / (p * p) - 3.0 / p)
}

/// `E[trace(L1^k)]` for `k` in `1..=3`: `0`, `2 n (n - 1) s` and
/// `4 n (n - 1) s (1 - 2 p)` with `s = p (1 - p)`.
///
/// The cubic moment is nonzero unless `p = 1/2`: the centered edge
/// indicator has third moment `s (1 - 2 p)`, and both `trace(D1^3)` and
/// `3 trace(D1 A1^2)` pick it up once per ordered pair.
pub fn expected_l1_trace_moment(n: usize, p: f64, k: u32) -> Result<f64> {
    check_n(n)?;
    check_p(p)?;
    let pairs = (n * (n - 1)) as f64;
    let s = p * (1.0 - p);
    match k {
        1 => Ok(0.0),
        2 => Ok(2.0 * pairs * s),
        3 => Ok(4.0 * pairs * s * (1.0 - 2.0 * p)),
        _ => Err(Error::Contract(format!(
            "moment order must be in 1..=3, got {k}"
        ))),
    }
}

/// Diagnostics for how far `(n, p)` is into the asymptotic regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssumptionDiagnostic {
    /// `5 sqrt(ln n / (n p))`; the series expansion needs this below 1.
    pub cn: f64,
    /// `n p / ln^6 n`; the asymptotics want this large.
    pub ratio: f64,
    /// `1 - 3.01 / n^11`, clamped at 0.
    pub en_prob_floor: f64,
}

pub fn assumption_diagnostic(n: usize, p: f64) -> Result<AssumptionDiagnostic> {
    check_n(n)?;
    check_p(p)?;
    let nf = n as f64;
    let ln = nf.ln();
    Ok(AssumptionDiagnostic {
        cn: 5.0 * (ln / (nf * p)).sqrt(),
        ratio: nf * p / ln.powi(6),
        en_prob_floor: (1.0 - FAILURE_CONSTANT / nf.powi(11)).max(0.0),
    })
}

/// Lower bound `trace(Sigma) * trace(L^+)` on the total squared error of an
/// unbiased estimator in translation synchronization.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
pub fn crb_lower_bound(sigma_trace: f64, trace_pinv: f64) -> Result<f64> {
    if !(sigma_trace >= 0.0) || !(trace_pinv >= 0.0) {
        return Err(Error::Contract(format!(
            "traces must be nonnegative, got {sigma_trace} and {trace_pinv}"
        )));
    }
    Ok(sigma_trace * trace_pinv)
}

/// All predictions for one `(n, p)` at band tail `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryPrediction {
    pub n: usize,
    pub p: f64,
    pub mean_xn: f64,
    pub band_halfwidth: f64,
    pub epsilon: f64,
    pub band_probability: f64,
    pub cn: f64,
    pub assumption_ratio: f64,
    pub en_prob_floor: f64,
    pub expected_kirchhoff: f64,
    pub max_trace_pinv: f64,
}

impl TheoryPrediction {
    pub fn new(n: usize, p: f64, epsilon: f64) -> Result<Self> {
        let diag = assumption_diagnostic(n, p)?;
        Ok(Self {
            n,
            p,
            mean_xn: expected_xn(n, p)?,
            band_halfwidth: fluctuation_bound(n, p, epsilon)?,
            epsilon,
            band_probability: band_probability(n, epsilon)?,
            cn: diag.cn,
            assumption_ratio: diag.ratio,
            en_prob_floor: diag.en_prob_floor,
            expected_kirchhoff: expected_kirchhoff(n, p)?,
            max_trace_pinv: max_trace_pinv_bound(n)?,
        })
    }
}
