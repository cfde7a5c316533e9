use kirchhoff_core::er::centered_laplacian;
use kirchhoff_core::format::sig;
use kirchhoff_core::graph::{is_connected, wiener_index};
use kirchhoff_core::Hops;
use serde_json::json;

use super::{echo_config, row, CliResult, SourceArgs, TABLE_DIGITS};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    source: SourceArgs,
    /// Print one JSON object instead of a table.
    #[arg(long)]
    json: bool,
}

pub fn run(args: Args) -> CliResult {
    let source = args.source.resolve()?;
    echo_config(&json!({ "command": "graph", "source": source.to_json(), "json": args.json }));
    let g = source.load()?;
    let connected = is_connected(&g);
    let wiener = wiener_index(&g).finite();
    let l1_norm = match source.p() {
        Some(p) => Some(centered_laplacian(&g, p)?.operator_norm()),
        None => None,
    };

    if args.json {
        let mut out = json!({
            "nodes": g.node_count(),
            "edges": g.edge_count(),
            "connected": connected,
            "wiener": wiener,
        });
        if let Some(v) = l1_norm {
            out["l1_norm"] = json!(v);
        }
        println!("{out}");
        return Ok(());
    }
    row("nodes", g.node_count());
    row("edges", g.edge_count());
    row("connected", connected);
    if let Some(v) = l1_norm {
        row("l1_norm", sig(v, TABLE_DIGITS));
    }
    row("wiener", wiener.map_or(Hops::Unreachable, Hops::Finite));
    Ok(())
}
