use std::path::{Path, PathBuf};

use kirchhoff_core::experiment::{full_grid, run_experiment, ExperimentConfig, Scenario};
use kirchhoff_core::format::sig;
use serde::Deserialize;
use serde_json::json;

use super::{echo_config, invalid, CliError, CliResult, TABLE_DIGITS};

const DEFAULT_OUTPUT: &str = "kirchhoff-run";
const FULL_REPLICATES: usize = 500;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// TOML file with any of: scenarios, n_grid, replicates, epsilon, seed,
    /// output, threads, timing. Flags override file values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Use the 15-point grid from 100 to 2000 with 500 replicates.
    #[arg(long, conflicts_with = "n_grid")]
    full: bool,
    /// Density rule, repeatable: `power:GAMMA,ALPHA` or `constant:P`.
    #[arg(long = "scenario", value_name = "SPEC")]
    scenarios: Vec<String>,
    /// Comma-separated, strictly increasing node counts.
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Master seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Output base path; writes `<path>.records.csv`, `<path>.summary.csv`
    /// and `<path>.manifest.json`.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Record eigensolve wall time (makes record files non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    scenarios: Option<Vec<Scenario>>,
    n_grid: Option<Vec<usize>>,
    replicates: Option<usize>,
    epsilon: Option<f64>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    threads: Option<usize>,
    timing: Option<bool>,
}

fn read_file_config(path: &Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn parse_scenario(spec: &str) -> CliResult<Scenario> {
    let bad = || {
        invalid(format!(
            "--scenario: expected `power:GAMMA,ALPHA` or `constant:P`, got {spec:?}"
        ))
    };
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let nums: Vec<f64> = rest
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match (kind, nums.as_slice()) {
        ("power", &[gamma, alpha]) => Ok(Scenario::PowerLaw { gamma, alpha }),
        ("constant", &[p]) => Ok(Scenario::Constant { p }),
        _ => Err(bad()),
    }
}

fn resolve(args: &Args) -> CliResult<ExperimentConfig> {
    let file = match &args.config {
        Some(path) => read_file_config(path)?,
        None => FileConfig::default(),
    };
    let mut config = ExperimentConfig::desk(DEFAULT_OUTPUT);
    if let Some(v) = file.scenarios {
        config.scenarios = v;
    }
    if let Some(v) = file.n_grid {
        config.n_grid = v;
    }
    if let Some(v) = file.replicates {
        config.replicates = v;
    }
    if let Some(v) = file.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = file.seed {
        config.master_seed = v;
    }
    if let Some(v) = file.output {
        config.output_path = v;
    }
    config.threads = file.threads.or(config.threads);
    config.record_timing = file.timing.unwrap_or(false);

    if args.full {
        config.n_grid = full_grid();
        config.replicates = FULL_REPLICATES;
    }
    if !args.scenarios.is_empty() {
        config.scenarios = args
            .scenarios
            .iter()
            .map(|s| parse_scenario(s))
            .collect::<CliResult<_>>()?;
    }
    if let Some(v) = &args.n_grid {
        config.n_grid = v.clone();
    }
    if let Some(v) = args.replicates {
        config.replicates = v;
    }
    if let Some(v) = args.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = args.seed {
        config.master_seed = v;
    }
    if let Some(v) = &args.output {
        config.output_path = v.clone();
    }
    if args.threads.is_some() {
        config.threads = args.threads;
    }
    if args.timing {
        config.record_timing = true;
    }
    config.validate()?;
    Ok(config)
}

pub fn run(args: Args) -> CliResult {
    let config = resolve(&args)?;
    echo_config(&json!({ "command": "experiment", "config": config }));
    let out = run_experiment(&config)?;

    println!("records   {}", out.paths.records.display());
    println!("summary   {}", out.paths.summary.display());
    println!("manifest  {}", out.paths.manifest.display());
    println!();
    println!(
        "{:>8} {:>6} {:>12} {:>12} {:>12} {:>12} {:>9} {:>9} {:>9}",
        "scenario", "n", "p", "mean_xn", "predicted", "band", "coverage", "connected", "en"
    );
    let f = |x: f64| sig(x, TABLE_DIGITS);
    for s in &out.summary {
        println!(
            "{:>8} {:>6} {:>12} {:>12} {:>12} {:>12} {:>9} {:>9} {:>9}",
            s.scenario_id,
            s.n,
            f(s.p),
            f(s.mean_xn),
            f(s.predicted_mean),
            f(s.band_halfwidth),
            f(s.coverage),
            f(s.connected_frac),
            f(s.en_frac)
        );
    }
    Ok(())
}
