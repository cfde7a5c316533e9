pub mod experiment;
pub mod graph;
pub mod kirchhoff;
pub mod sync;
pub mod theory;

use std::fmt;
use std::path::PathBuf;

use kirchhoff_core::er::ErParams;
use kirchhoff_core::Graph;
use serde_json::{json, Value};

/// Significant digits for human-readable tables.
pub const TABLE_DIGITS: usize = 6;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, parameters or input files.
    Invalid(String),
    /// Failures after the input was accepted, including I/O.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<kirchhoff_core::Error> for CliError {
    fn from(e: kirchhoff_core::Error) -> Self {
        if e.is_validation() {
            CliError::Invalid(e.to_string())
        } else {
            CliError::Runtime(e.to_string())
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

/// Prints the resolved configuration to stderr before any work starts.
pub fn echo_config(config: &Value) {
    eprintln!("config: {config}");
}

pub fn row(label: &str, value: impl fmt::Display) {
    println!("{label:<20} {value}");
}

/// Where a graph comes from: a seeded Erdős–Rényi draw or an edge-list file.
#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Sample G(n, p) with the given seed.
    #[arg(long, num_args = 3, value_names = ["N", "P", "SEED"], allow_negative_numbers = true)]
    er: Option<Vec<String>>,
    /// Edge-list file: an `n=<count>` header, then one `i j` pair per line.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

pub enum Source {
    Er(ErParams),
    File(PathBuf),
}

impl SourceArgs {
    pub fn resolve(&self) -> CliResult<Source> {
        if let Some(v) = &self.er {
            let n = v[0]
                .parse()
                .map_err(|_| invalid(format!("--er: N must be a node count, got {:?}", v[0])))?;
            let p = v[1]
                .parse()
                .map_err(|_| invalid(format!("--er: P must be a number, got {:?}", v[1])))?;
            let seed = v[2].parse().map_err(|_| {
                invalid(format!(
                    "--er: SEED must be a 64-bit unsigned integer, got {:?}",
                    v[2]
                ))
            })?;
            let params = ErParams::new(n, p, seed).map_err(|e| invalid(format!("--er: {e}")))?;
            return Ok(Source::Er(params));
        }
        match &self.input {
            Some(path) => Ok(Source::File(path.clone())),
            None => Err(invalid("one of --er or --input is required")),
        }
    }
}

impl Source {
    pub fn to_json(&self) -> Value {
        match self {
            Source::Er(p) => json!({ "er": { "n": p.n, "p": p.p, "seed": p.seed } }),
            Source::File(path) => json!({ "input": path.display().to_string() }),
        }
    }

    pub fn p(&self) -> Option<f64> {
        match self {
            Source::Er(p) => Some(p.p),
            Source::File(_) => None,
        }
    }

    pub fn load(&self) -> CliResult<Graph> {
        match self {
            Source::Er(p) => Ok(kirchhoff_core::er::sample_er(p)),
            Source::File(path) => Ok(Graph::load(path)?),
        }
    }
}
