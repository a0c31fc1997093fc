//! `entropic`: command-line front end to the prover, the distribution
//! engine and the stability lab.
//!
//! Exit codes: 0 success, 1 domain failure, 2 usage or input error.

mod dist_cmd;
mod lab_cmd;
mod prove_cmd;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{Domain, Report};

#[derive(Parser, Debug)]
#[command(
    name = "entropic",
    version,
    about = "Entropy inequality prover and distribution toolkit"
)]
struct Cli {
    /// Seed for every random choice (sweeps and searches).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse expressions or statements and print their canonical forms.
    Parse(prove_cmd::ParseArgs),
    /// Decide a statement with an optional extension script.
    Prove(prove_cmd::ProveArgs),
    /// Search for an extension script that proves a statement.
    SearchScript(prove_cmd::SearchScriptArgs),
    /// Entropy profile of a distribution file.
    Profile(dist_cmd::ProfileArgs),
    /// Check that a profile file is a polymatroid.
    CheckProfile(dist_cmd::CheckProfileArgs),
    /// Ingleton gap of a profile or a distribution.
    Gap(dist_cmd::GapArgs),
    /// Add a conditionally independent copy of a variable.
    ExtendCopy(dist_cmd::ExtendCopyArgs),
    /// Symmetrize a pair of variables.
    Symmetrize(dist_cmd::SymmetrizeArgs),
    /// Tensor power of a distribution.
    Tensor(dist_cmd::TensorArgs),
    /// Stability sweep over an eps grid, written as CSV.
    Sweep(lab_cmd::SweepArgs),
    /// Hill-climbing search for a table maximizing an expression.
    Search(lab_cmd::SearchArgs),
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    match cli.command {
        Command::Parse(a) => prove_cmd::parse(a),
        Command::Prove(a) => prove_cmd::prove(a),
        Command::SearchScript(a) => prove_cmd::search_script(a),
        Command::Profile(a) => dist_cmd::profile(a),
        Command::CheckProfile(a) => dist_cmd::check_profile(a),
        Command::Gap(a) => dist_cmd::gap(a),
        Command::ExtendCopy(a) => dist_cmd::extend_copy(a),
        Command::Symmetrize(a) => dist_cmd::symmetrize(a),
        Command::Tensor(a) => dist_cmd::tensor(a),
        Command::Sweep(a) => lab_cmd::sweep(a, cli.seed),
        Command::Search(a) => lab_cmd::search(a, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &report.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match report.failure {
                Some(reason) => {
                    eprintln!("failure: {reason}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Domain>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
