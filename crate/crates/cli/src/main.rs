use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kanmeasure::report::Report;
use kanmeasure_cli::{run_scenario, schema, suite, CliError, Options};

#[derive(Parser)]
#[command(name = "kanmeasure", version, about = "Exact checks for Σ-transformations, premeasures and their extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Also write the report as JSON to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true)]
    arity_bound: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run { path: PathBuf },
    /// Run a built-in suite: engine, measure, carath or all.
    Suite { name: String },
    /// Print the JSON schemas of scenario files.
    Schema,
}

fn emit(report: &Report, json: Option<&PathBuf>) -> Result<(), CliError> {
    println!("{report}");
    if let Some(path) = json {
        std::fs::write(path, report.to_json() + "\n")
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { seed: cli.seed, samples: cli.samples, arity_bound: cli.arity_bound };
    let report = match &cli.command {
        Command::Schema => {
            println!("{}", serde_json::to_string_pretty(&schema::schemas()).expect("schemas serialize"));
            return ExitCode::SUCCESS;
        }
        Command::Run { path } => run_scenario(path, &opts),
        Command::Suite { name } => suite(name, &opts),
    };
    match report.and_then(|r| emit(&r, cli.json.as_ref()).map(|_| r)) {
        Ok(r) if r.passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
