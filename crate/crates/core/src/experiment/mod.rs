//! Monte Carlo harness: for every `(scenario, n)` cell draw `replicates`
//! Erdős–Rényi graphs, record `X_n` with connectivity and spectral-event
//! flags, and compare against the predicted mean and fluctuation band.
//!
//! Each replicate's seed is derived from `(master_seed, scenario, n,
//! replicate)` (see [`derive_seed`]), so records never depend on execution
//! order or thread count.

mod csv;
mod seed;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::er::{sample_er, summarize_draw, ErParams};
use crate::error::{Error, Result};
use crate::theory::{expected_xn, fluctuation_bound, power_law_p};

pub use self::csv::{
    manifest_path, read_records, read_summary, records_path, summary_path, write_csv, RecordWriter,
    RECORDS_HEADER, SUMMARY_HEADER,
};
pub use self::seed::{derive_seed, SEED_SCHEME};

/// How the edge probability depends on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Scenario {
    /// `p = gamma * n^(alpha - 1)`.
    PowerLaw {
        gamma: f64,
        alpha: f64,
    },
    Constant {
        p: f64,
    },
}

impl Scenario {
    pub fn p(&self, n: usize) -> f64 {
        match *self {
            Scenario::PowerLaw { gamma, alpha } => power_law_p(n, gamma, alpha),
            Scenario::Constant { p } => p,
        }
    }
}

/// `p = n^(-1/2)`, `p = n^(-1/4)` and `p = 1/2`.
pub fn default_scenarios() -> Vec<Scenario> {
    vec![
        Scenario::PowerLaw {
            gamma: 1.0,
            alpha: 0.5,
        },
        Scenario::PowerLaw {
            gamma: 1.0,
            alpha: 0.75,
        },
        Scenario::Constant { p: 0.5 },
    ]
}

pub const DESK_GRID: [usize; 4] = [100, 200, 400, 800];

/// 15 log-spaced node counts from 100 to 2000.
pub fn full_grid() -> Vec<usize> {
    (0..15)
        .map(|k| (100.0 * 20f64.powf(k as f64 / 14.0)).round() as usize)
        .collect()
}

/// Band tail giving at least 99% coverage for `n >= 100`.
pub const DEFAULT_EPSILON: f64 = 0.004;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub scenarios: Vec<Scenario>,
    pub n_grid: Vec<usize>,
    pub replicates: usize,
    pub epsilon: f64,
    pub master_seed: u64,
    /// Base path; outputs are `<path>.records.csv`, `<path>.summary.csv` and
    /// `<path>.manifest.json`.
    pub output_path: PathBuf,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Record eigensolve wall time. Off by default so record files stay
    /// byte-reproducible; when off `eigen_ms` is written as 0.
    pub record_timing: bool,
}

impl ExperimentConfig {
    /// Desk-scale version of the three-scenario sweep.
    pub fn desk(output_path: impl Into<PathBuf>) -> Self {
        Self {
            scenarios: default_scenarios(),
            n_grid: DESK_GRID.to_vec(),
            replicates: 100,
            epsilon: DEFAULT_EPSILON,
            master_seed: 0,
            output_path: output_path.into(),
            threads: None,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.scenarios.is_empty() {
            return Err(Error::Config("at least one scenario is required".into()));
        }
        if self.n_grid.is_empty() {
            return Err(Error::Config("n_grid is empty".into()));
        }
        if self.n_grid[0] < 2 {
            return Err(Error::Config(format!(
                "n_grid values must be >= 2, got {}",
                self.n_grid[0]
            )));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n_grid must be strictly increasing".into()));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be >= 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 0.5) {
            return Err(Error::Config(format!(
                "epsilon must be in (0, 1/2], got {}",
                self.epsilon
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        for (id, scenario) in self.scenarios.iter().enumerate() {
            for &n in &self.n_grid {
                let p = scenario.p(n);
                if !(p > 0.0 && p < 1.0) {
                    return Err(Error::Config(format!(
                        "scenario {id} gives p = {p} at n = {n}, outside (0, 1)"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One Monte Carlo draw.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationRecord {
    pub scenario_id: usize,
    pub n: usize,
    pub p: f64,
    pub replicate: usize,
    pub seed: u64,
    pub xn: f64,
    pub connected: bool,
    pub event_en: bool,
    pub eigen_ms: f64,
}

/// Aggregate over the records of one `(scenario, n)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub scenario_id: usize,
    pub n: usize,
    pub p: f64,
    pub mean_xn: f64,
    pub predicted_mean: f64,
    pub band_halfwidth: f64,
    /// Fraction with `|xn - predicted_mean| <= band_halfwidth`.
    pub coverage: f64,
    pub connected_frac: f64,
    pub en_frac: f64,
}

pub fn realize(
    scenario_id: usize,
    n: usize,
    p: f64,
    replicate: usize,
    master_seed: u64,
    record_timing: bool,
) -> RealizationRecord {
    let seed = derive_seed(master_seed, scenario_id, n, replicate);
    let g = sample_er(&ErParams { n, p, seed });
    let start = Instant::now();
    let draw = summarize_draw(&g, p);
    let eigen_ms = if record_timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    RealizationRecord {
        scenario_id,
        n,
        p,
        replicate,
        seed,
        xn: draw.xn,
        connected: draw.connected,
        event_en: draw.event_en,
        eigen_ms,
    }
}

fn realize_cell(config: &ExperimentConfig, scenario_id: usize, n: usize) -> Vec<RealizationRecord> {
    let p = config.scenarios[scenario_id].p(n);
    (0..config.replicates)
        .into_par_iter()
        .map(|r| {
            realize(
                scenario_id,
                n,
                p,
                r,
                config.master_seed,
                config.record_timing,
            )
        })
        .collect()
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Draws every record in memory, without touching the filesystem.
pub fn run_records(config: &ExperimentConfig) -> Result<Vec<RealizationRecord>> {
    config.validate()?;
    with_pool(config.threads, || {
        let mut records = Vec::new();
        for scenario_id in 0..config.scenarios.len() {
            for &n in &config.n_grid {
                records.extend(realize_cell(config, scenario_id, n));
            }
        }
        records
    })
}

/// Aggregates records per `(scenario, n)` in the order cells first appear.
/// The band and predicted mean are evaluated at each cell's `p`.
pub fn summarize(records: &[RealizationRecord], epsilon: f64) -> Result<Vec<SummaryRow>> {
    let mut rows = Vec::new();
    let mut start = 0;
    while start < records.len() {
        let key = (records[start].scenario_id, records[start].n);
        let end = start
            + records[start..]
                .iter()
                .take_while(|r| (r.scenario_id, r.n) == key)
                .count();
        let cell = &records[start..end];
        let (scenario_id, n) = key;
        let p = cell[0].p;
        let predicted_mean = expected_xn(n, p)?;
        let band_halfwidth = fluctuation_bound(n, p, epsilon)?;
        let count = cell.len() as f64;
        let frac = |pred: &dyn Fn(&RealizationRecord) -> bool| {
            cell.iter().filter(|r| pred(r)).count() as f64 / count
        };
        rows.push(SummaryRow {
            scenario_id,
            n,
            p,
            mean_xn: cell.iter().map(|r| r.xn).sum::<f64>() / count,
            predicted_mean,
            band_halfwidth,
            coverage: frac(&|r| (r.xn - predicted_mean).abs() <= band_halfwidth),
            connected_frac: frac(&|r| r.connected),
            en_frac: frac(&|r| r.event_en),
        });
        start = end;
    }
    Ok(rows)
}

/// Paths written by [`run_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutputPaths {
    pub records: PathBuf,
    pub summary: PathBuf,
    pub manifest: PathBuf,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub records: Vec<RealizationRecord>,
    pub summary: Vec<SummaryRow>,
    pub paths: OutputPaths,
}

#[derive(Serialize)]
struct Manifest<'a> {
    config: &'a ExperimentConfig,
    seed: u64,
    seed_scheme: &'static str,
    grid: &'a [usize],
    code_version: &'static str,
}

fn write_manifest(config: &ExperimentConfig, path: &Path) -> Result<()> {
    let manifest = Manifest {
        config,
        seed: config.master_seed,
        seed_scheme: SEED_SCHEME,
        grid: &config.n_grid,
        code_version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")),
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Runs the sweep, streaming records to `<path>.records.csv` one cell at a
/// time, then rebuilds the summary from the record file.
///
/// All output files are created before any sampling starts, so an unwritable
/// location fails fast.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let paths = OutputPaths {
        records: records_path(&config.output_path),
        summary: summary_path(&config.output_path),
        manifest: manifest_path(&config.output_path),
    };
    let mut writer = RecordWriter::create(&paths.records)?;
    std::fs::File::create(&paths.summary).map_err(|e| Error::io(&paths.summary, e))?;
    write_manifest(config, &paths.manifest)?;

    with_pool(config.threads, || -> Result<()> {
        for scenario_id in 0..config.scenarios.len() {
            for &n in &config.n_grid {
                let cell = realize_cell(config, scenario_id, n);
                writer.append(&cell)?;
            }
        }
        Ok(())
    })??;
    drop(writer);

    let records = read_records(&paths.records)?;
    let summary = summarize(&records, config.epsilon)?;
    csv::write_summary_file(&summary, &paths.summary)?;
    Ok(ExperimentOutput {
        records,
        summary,
        paths,
    })
}
