use kirchhoff_core::format::sig;
use kirchhoff_core::graph::{build_laplacian, is_connected};
use kirchhoff_core::spectral::pseudo_inverse;
use serde_json::json;

use super::{echo_config, row, CliResult, SourceArgs};

const DIGITS: usize = 12;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    source: SourceArgs,
    /// Print every pairwise resistance distance as `i,j,resistance` CSV
    /// instead of the summary.
    #[arg(long)]
    pairs: bool,
}

pub fn run(args: Args) -> CliResult {
    let source = args.source.resolve()?;
    echo_config(
        &json!({ "command": "kirchhoff", "source": source.to_json(), "pairs": args.pairs }),
    );
    let g = source.load()?;
    let pinv = pseudo_inverse(&build_laplacian(&g))?;

    if args.pairs {
        let n = g.node_count();
        let mut component = vec![0; n];
        for (c, nodes) in g.components().iter().enumerate() {
            for &v in nodes {
                component[v] = c;
            }
        }
        println!("i,j,resistance");
        for i in 0..n {
            for j in i + 1..n {
                let r = if component[i] == component[j] {
                    pinv.resistance_distance(i, j)
                } else {
                    f64::INFINITY
                };
                println!("{i},{j},{}", sig(r, DIGITS));
            }
        }
        return Ok(());
    }

    let trace = pinv.trace();
    let kf = if is_connected(&g) {
        g.node_count() as f64 * trace
    } else {
        f64::INFINITY
    };
    row("trace_pinv", sig(trace, DIGITS));
    row("kirchhoff_index", sig(kf, DIGITS));
    if let Some(p) = source.p() {
        row("xn", sig(p * trace, DIGITS));
    }
    Ok(())
}
