//! `hypermatch` command-line front end.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 input error, 3 search budget
//! exhausted.

mod commands;
mod experiments;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypermatch::SearchBudget;

use report::{CliError, Outcome};

#[derive(Parser)]
#[command(name = "hypermatch", version, about = "Matchings, tilings and divisibility barriers in uniform hypergraphs")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Node budget for each exact search.
    #[arg(long, global = true, value_name = "NODES")]
    budget: Option<u64>,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a construction as a `.hg` file together with its checklist.
    Gen(commands::GenArgs),
    /// Compute properties of a hypergraph file.
    Check(commands::CheckArgs),
    /// Maximum matching, exact or by local search.
    Match(commands::MatchArgs),
    /// Maximum pattern tiling, exact or by local search.
    Tile(commands::TileArgs),
    /// Lattice diagnostics for a partitioned hypergraph or an explicit generator list.
    Lattice(commands::LatticeArgs),
    /// Absorbing counts and the absorption loop.
    Absorb(commands::AbsorbArgs),
    /// Run a named experiment over its parameter grid.
    Experiment(experiments::ExperimentArgs),
    /// Check a matching or tiling certificate against a hypergraph file.
    ValidateCertificate(commands::ValidateArgs),
}

/// Settings shared by every subcommand.
pub struct Ctx {
    pub seed: Option<u64>,
    pub budget: SearchBudget,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let budget = match cli.budget {
        Some(nodes) => SearchBudget::new(nodes)?,
        None => SearchBudget::default(),
    };
    let ctx = Ctx { seed: cli.seed, budget };
    match cli.command {
        Command::Gen(a) => commands::gen(&ctx, a),
        Command::Check(a) => commands::check(&ctx, a),
        Command::Match(a) => commands::matching(&ctx, a),
        Command::Tile(a) => commands::tile(&ctx, a),
        Command::Lattice(a) => commands::lattice(&ctx, a),
        Command::Absorb(a) => commands::absorb(&ctx, a),
        Command::Experiment(a) => experiments::run(&ctx, a),
        Command::ValidateCertificate(a) => commands::validate(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json.clone();
    let result = run(cli).and_then(|outcome| {
        report::emit(&outcome, json.as_deref())?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
