use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use sumrank_cli::{run_json, RunOptions, EXIT_SCHEMA};

/// Runs a JSON job of sum-rank metric computations and prints a JSON report.
#[derive(Debug, Parser)]
#[command(name = "sumrank", version)]
struct Cli {
    /// Job file; reads standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Enumeration budget, overriding the job's own.
    #[arg(long)]
    budget: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut input = String::new();
    let read = match cli.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|s| input = s),
        _ => std::io::stdin().read_to_string(&mut input).map(|_| ()),
    };
    if let Err(e) = read {
        eprintln!("sumrank: cannot read input: {e}");
        return ExitCode::from(EXIT_SCHEMA as u8);
    }
    let (report, code) = run_json(&input, &RunOptions { budget: cli.budget, seed: cli.seed });
    print!("{report}");
    ExitCode::from(code as u8)
}
