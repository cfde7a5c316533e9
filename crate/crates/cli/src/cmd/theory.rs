use kirchhoff_core::experiment::DEFAULT_EPSILON;
use kirchhoff_core::format::sig;
use kirchhoff_core::theory::{expected_xn_vanishing, power_law_p, TheoryPrediction};
use serde_json::json;

use super::{echo_config, invalid, row, CliResult, TABLE_DIGITS};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Number of nodes.
    n: usize,
    /// Edge probability; omit when giving --gamma and --alpha.
    #[arg(allow_negative_numbers = true)]
    p: Option<f64>,
    /// Tail parameter of the fluctuation band.
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    epsilon: f64,
    /// Use p = gamma * n^(alpha - 1).
    #[arg(
        long,
        requires = "alpha",
        conflicts_with = "p",
        allow_negative_numbers = true
    )]
    gamma: Option<f64>,
    #[arg(
        long,
        requires = "gamma",
        conflicts_with = "p",
        allow_negative_numbers = true
    )]
    alpha: Option<f64>,
}

fn check(args: &Args) -> CliResult<f64> {
    if args.n < 2 {
        return Err(invalid(format!("n must be at least 2, got {}", args.n)));
    }
    if !(args.epsilon > 0.0 && args.epsilon <= 0.5) {
        return Err(invalid(format!(
            "--epsilon must be in (0, 0.5], got {}",
            args.epsilon
        )));
    }
    let p = match (args.p, args.gamma, args.alpha) {
        (Some(p), _, _) => {
            if !(p > 0.0 && p < 1.0) {
                return Err(invalid(format!("p must be in (0, 1), got {p}")));
            }
            p
        }
        (None, Some(gamma), Some(alpha)) => {
            if !(gamma > 0.0 && gamma.is_finite()) {
                return Err(invalid(format!("--gamma must be positive, got {gamma}")));
            }
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(invalid(format!("--alpha must be in (0, 1], got {alpha}")));
            }
            if alpha == 1.0 && gamma >= 1.0 {
                return Err(invalid(format!(
                    "--gamma must be below 1 when --alpha is 1, got {gamma}"
                )));
            }
            let p = power_law_p(args.n, gamma, alpha);
            if p >= 1.0 {
                return Err(invalid(format!(
                    "--gamma {gamma} and --alpha {alpha} give p = {p} at n = {}, not below 1",
                    args.n
                )));
            }
            p
        }
        _ => return Err(invalid("give either p or both --gamma and --alpha")),
    };
    Ok(p)
}

pub fn run(args: Args) -> CliResult {
    let p = check(&args)?;
    echo_config(&json!({
        "command": "theory",
        "n": args.n,
        "p": p,
        "epsilon": args.epsilon,
        "gamma": args.gamma,
        "alpha": args.alpha,
    }));
    let t = TheoryPrediction::new(args.n, p, args.epsilon)?;
    let f = |x: f64| sig(x, TABLE_DIGITS);
    row("n", t.n);
    row("p", f(t.p));
    row("expected_xn", f(t.mean_xn));
    if let (Some(gamma), Some(alpha)) = (args.gamma, args.alpha) {
        row(
            "expected_xn_power",
            f(expected_xn_vanishing(args.n, gamma, alpha)?),
        );
    }
    row("fluctuation_bound", f(t.band_halfwidth));
    row("epsilon", f(t.epsilon));
    row("band_probability", f(t.band_probability));
    row("c_n", f(t.cn));
    row("assumption_ratio", f(t.assumption_ratio));
    row("en_prob_floor", f(t.en_prob_floor));
    row("expected_kirchhoff", f(t.expected_kirchhoff));
    row("max_trace_bound", f(t.max_trace_pinv));
    Ok(())
}
