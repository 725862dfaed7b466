use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use interp_cli::{
    cmd_plan, cmd_reproduce, cmd_score, default_fixtures_dir, parse_theta, parse_weights, CliError, PlanConfig,
    Property, ScoreConfig,
};
use interp_core::{Aggregation, ParameterSelector, Weights};

#[derive(Parser)]
#[command(name = "interp", version, about = "Interpretability scores for agent behavior on grid worlds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Agg {
    Mean,
    Final,
}

#[derive(Subcommand)]
enum Command {
    /// Per-step scores of a path as CSV.
    Score {
        #[arg(long)]
        scenario: PathBuf,
        /// Action letters, e.g. RRDL.
        #[arg(long)]
        path: String,
        /// goal=<label> or beta=<value>; defaults to the true model's goal.
        #[arg(long, value_parser = parse_theta)]
        theta: Option<ParameterSelector>,
        /// Defaults to the first model in the file.
        #[arg(long)]
        true_model: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best trace of a model under a weighted score objective.
    Plan {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        true_model: String,
        /// e=..,l=..,p=..,d=..,o=..
        #[arg(long, value_parser = parse_weights)]
        weights: Weights,
        #[arg(long, value_parser = parse_theta)]
        theta: Option<ParameterSelector>,
        #[arg(long)]
        optimal_only: bool,
        #[arg(long, value_enum, default_value = "final")]
        agg: Agg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a property on the shipped reconstruction maps.
    Reproduce {
        #[arg(long, value_parser = ["p1", "p2", "p3", "appendix"])]
        property: String,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io { path, reason: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Score { scenario, path, theta, true_model, out } => {
            let csv = cmd_score(&ScoreConfig { scenario, path, theta, true_model })?;
            emit(&csv, out)
        }
        Command::Plan { scenario, true_model, weights, theta, optimal_only, agg, out } => {
            let aggregation = match agg {
                Agg::Mean => Aggregation::MeanOverPrefixes,
                Agg::Final => Aggregation::FinalPrefix,
            };
            let text = cmd_plan(&PlanConfig { scenario, true_model, weights, theta, optimal_only, aggregation })?;
            emit(&text, out)
        }
        Command::Reproduce { property, fixtures } => {
            let property = Property::parse(&property).expect("restricted by clap");
            let report = cmd_reproduce(property, &fixtures.unwrap_or_else(default_fixtures_dir))?;
            print!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", e.kind());
            ExitCode::FAILURE
        }
    }
}
