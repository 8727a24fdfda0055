//! Command-line front end: `pseudosym classify <file|builtin>`.
//!
//! Exit codes: 0 success, 1 internal inconsistency (a solver's
//! back-substitution or the oracle disagreed), 2 input error.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pseudosym_core::zoo::oracle::{DEFAULT_SAMPLES, DEFAULT_SEED};
use pseudosym_core::zoo::report::{classify, render_report, Check, Format, Options, TensorChoice};
use pseudosym_core::zoo::{builtin, MetricSpec, SpecError, BUILTINS};

#[derive(Parser)]
#[command(name = "pseudosym", version, about = "Exact curvature and pseudosymmetry classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a metric file or a builtin chart.
    Classify {
        /// Path to a metric JSON file, or a builtin name.
        input: String,
        /// Classifier groups to run (default: all).
        #[arg(long, value_delimiter = ',')]
        check: Option<Vec<Check>>,
        /// Tensors among R, C, K, conh, P, G, S (default: R, C, K, conh, P, S).
        #[arg(long, value_delimiter = ',')]
        tensor: Option<Vec<TensorChoice>>,
        #[arg(long, default_value = "text")]
        format: Format,
        /// Oracle samples per identity; 0 disables the oracle.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        oracle_samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print the builtin chart names.
    ListBuiltins,
}

fn load(input: &str) -> Result<MetricSpec, SpecError> {
    let path = Path::new(input);
    if path.exists() {
        MetricSpec::load(path)
    } else {
        builtin(input)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListBuiltins => {
            for name in BUILTINS {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Classify {
            input,
            check,
            tensor,
            format,
            oracle_samples,
            seed,
        } => {
            let defaults = Options::default();
            let options = Options {
                checks: check.unwrap_or(defaults.checks),
                tensors: tensor.unwrap_or(defaults.tensors),
                oracle_samples: (oracle_samples > 0).then_some(oracle_samples),
                seed,
            };
            let spec = match load(&input) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let classified = match classify(&spec, &options) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let report = &classified.report;
            print!("{}", render_report(report, format));
            let oracle_ok = report
                .oracle
                .as_ref()
                .is_none_or(|o| o.disagreements == 0);
            if report.consistent && oracle_ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: internal inconsistency");
                ExitCode::from(1)
            }
        }
    }
}
