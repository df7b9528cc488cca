use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nmlab::cli::{self, RunConfig, Scenario};

/// Generate plot-ready data for the decoherence scenarios.
#[derive(Debug, Parser)]
#[command(name = "nmlab", version)]
struct Args {
    /// fig1, fig2, fig3, fig4, fig5, fig6, classify or synth
    scenario: Scenario,

    /// JSON object with the scenario parameters
    #[arg(long)]
    config: PathBuf,

    /// Output directory, created if missing
    #[arg(long)]
    out: PathBuf,

    /// Record the wall-clock time in the manifest
    #[arg(long)]
    timestamp: bool,

    /// Only check the config and print violations as JSON
    #[arg(long)]
    check: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match RunConfig::from_file(args.scenario, &args.config, &args.out) {
        Ok(mut c) => {
            c.timestamp = args.timestamp;
            c
        }
        Err(e) => return fail(e),
    };

    if args.check {
        let violations = cli::validate(&config);
        println!(
            "{}",
            serde_json::to_string(&violations).expect("violations serialize")
        );
        let code = if violations.is_empty() {
            cli::exit::SUCCESS
        } else {
            cli::exit::CONFIG
        };
        return ExitCode::from(code as u8);
    }

    match cli::run(&config) {
        Ok(report) => {
            for out in &report.outputs {
                println!("{}", args.out.join(&out.file).display());
            }
            println!("{}", report.manifest.display());
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn fail(e: cli::RunError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}
