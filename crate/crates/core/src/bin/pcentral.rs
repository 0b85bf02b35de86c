use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use pcentral::autsearch::{brute_force_aut, DEFAULT_BUDGET};
use pcentral::cache::build_default;
use pcentral::corpus::{run_corpus, ExperimentConfig, EXIT_ABORT};
use pcentral::series::describe;
use pcentral::verify::sigma_wording;
use pcentral::{Error, FamilySpec};

#[derive(Parser)]
#[command(
    name = "pcentral",
    about = "Exhaustive checks on finite p-groups and their automorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a corpus config; `default` selects the built-in corpus.
    Run {
        config: String,
        /// Directory for reports and bundles.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Write one JSON verdict per line to this file (relative to --out).
        #[arg(long)]
        ndjson: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print invariants of a catalog group.
    Show { family: String },
    /// Compute Aut(G) by exhaustive search.
    Aut {
        family: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Report both readings of the Jordan-block example for p in {2, 3, 5}.
    Sigma {
        p: u32,
        #[arg(long, default_value_t = 4096)]
        definitional_limit: usize,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Run {
            config,
            out,
            ndjson,
            threads,
        } => {
            let mut cfg = if config == "default" {
                ExperimentConfig::default_corpus()
            } else {
                ExperimentConfig::load(config.as_ref())?
            };
            if ndjson.is_some() {
                cfg.report.ndjson = ndjson;
            }
            if let Some(t) = threads {
                cfg.parallelism = t;
            }
            let report = run_corpus(&cfg, &out)?;
            print!("{}", report.summary_table());
            Ok(report.exit_code())
        }
        Command::Show { family } => {
            let g = build_default(&FamilySpec::parse(&family)?)?;
            print_json(&describe(&g)?)?;
            Ok(0)
        }
        Command::Aut { family, budget } => {
            let g = build_default(&FamilySpec::parse(&family)?)?;
            print_json(&brute_force_aut(Arc::new(g), budget)?.summary())?;
            Ok(0)
        }
        Command::Sigma { p, definitional_limit } => {
            if !matches!(p, 2 | 3 | 5) {
                return Err(Error::InvalidArgument(format!("p must be 2, 3 or 5, got {p}")));
            }
            print_json(&sigma_wording(p, definitional_limit)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ABORT as u8)
        }
    }
}
