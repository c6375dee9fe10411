use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use kcat_cli::{parse_field, run_source, RunOptions};
use kcat_core::FieldSpec;

/// Run the tasks of a .kcat workspace.
#[derive(Parser, Debug)]
#[command(name = "kcat", version)]
struct Args {
    /// Workspace file.
    file: PathBuf,
    /// Highest cohomological degree computed.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Override every category's field: Q or gf:<prime>.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Emit one JSON document per task.
    #[arg(long)]
    json: bool,
    /// Seed for randomized sample modules.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cross-check low degrees against materialized bimodule resolutions.
    #[arg(long)]
    verify_oracle: bool,
    /// Length beyond which quiver paths must vanish.
    #[arg(long, default_value_t = 12)]
    path_bound: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let source = match std::fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("kcat: {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let opts = RunOptions {
        max_degree: args.max_degree,
        field: args.field,
        seed: args.seed,
        verify_oracle: args.verify_oracle,
        path_bound: args.path_bound,
    };
    let outcome = run_source(&source, &opts);
    for r in &outcome.reports {
        if args.json {
            println!("{}", r.to_json());
        } else {
            print!("{}", r.to_human());
        }
    }
    ExitCode::from(outcome.exit_code() as u8)
}
