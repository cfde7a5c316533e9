use std::path::PathBuf;

use kirchhoff_core::er::{sample_er, ErParams};
use kirchhoff_core::experiment::derive_seed;
use kirchhoff_core::graph::is_connected;
use kirchhoff_core::sync::crb_experiment;
use kirchhoff_core::Graph;
use serde_json::{json, Value};

use super::{echo_config, invalid, CliError, CliResult};

const MAX_ATTEMPTS: usize = 1000;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    p: f64,
    /// Dimension of each unknown translation.
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Per-axis noise variance.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    sigma2: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use this edge-list graph instead of an Erdős–Rényi draw.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["n", "p"])]
    input: Option<PathBuf>,
}

fn check(args: &Args) -> CliResult {
    if args.input.is_none() {
        if args.n < 2 {
            return Err(invalid(format!("--n must be at least 2, got {}", args.n)));
        }
        if !(args.p > 0.0 && args.p < 1.0) {
            return Err(invalid(format!("--p must be in (0, 1), got {}", args.p)));
        }
    }
    if args.d == 0 {
        return Err(invalid("--d must be at least 1"));
    }
    if !(args.sigma2 >= 0.0 && args.sigma2.is_finite()) {
        return Err(invalid(format!(
            "--sigma2 must be finite and nonnegative, got {}",
            args.sigma2
        )));
    }
    if args.trials == 0 {
        return Err(invalid("--trials must be at least 1"));
    }
    Ok(())
}

/// Attempt `k` samples with `derive_seed(seed, 0, n, k)`; returns the first
/// connected draw and the number of rejected ones.
fn connected_draw(n: usize, p: f64, seed: u64) -> CliResult<(Graph, usize)> {
    for attempt in 0..MAX_ATTEMPTS {
        let g = sample_er(&ErParams::new(n, p, derive_seed(seed, 0, n, attempt))?);
        if is_connected(&g) {
            return Ok((g, attempt));
        }
    }
    Err(CliError::Runtime(format!(
        "no connected graph in {MAX_ATTEMPTS} draws of G({n}, {p}); increase p"
    )))
}

pub fn run(args: Args) -> CliResult {
    check(&args)?;
    let source: Value = match &args.input {
        Some(path) => json!(path.display().to_string()),
        None => json!(args.p),
    };
    echo_config(&json!({
        "command": "sync",
        "n": args.input.is_none().then_some(args.n),
        "p_or_graphfile": source,
        "d": args.d,
        "sigma2": args.sigma2,
        "trials": args.trials,
        "seed": args.seed,
    }));

    let (g, resamples) = match &args.input {
        Some(path) => (Graph::load(path)?, 0),
        None => {
            let np = args.n as f64 * args.p;
            if np < (args.n as f64).ln() {
                eprintln!(
                    "warning: n p = {np} is below ln n = {:.3}; most draws will be disconnected",
                    (args.n as f64).ln()
                );
            }
            connected_draw(args.n, args.p, args.seed)?
        }
    };
    let report = crb_experiment(&g, args.d, args.sigma2, args.trials, args.seed)?;
    println!(
        "{}",
        json!({
            "n": g.node_count(),
            "d": args.d,
            "p_or_graphfile": source,
            "sigma2": args.sigma2,
            "trials": args.trials,
            "empirical_mse": report.empirical_mse,
            "crb": report.crb,
            "ratio": report.ratio,
            "seed": args.seed,
            "resamples": resamples,
        })
    );
    Ok(())
}
