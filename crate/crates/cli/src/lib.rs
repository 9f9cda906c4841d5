//! `ramicalc`: JSON front end to the valuation, ramification, disc and
//! annulus crates.
//!
//! Every subcommand reads one JSON object and prints a report
//! `{command, input, status, result | error}` where `input` is the decoded
//! job written back out; feeding it in again reproduces the same report.

pub mod error;
pub mod export;
pub mod jobs;

use std::path::PathBuf;

use annuli_harmonicity::Convention;
use clap::{Args, Parser, Subcommand};
use disc_morphisms::ValuedSeries;
use lambda_calc::LambdaP;
use serde::Serialize;
use valuation_core::Exec;

pub use error::CliError;
pub use export::export_flows;
use jobs::{decode, ComposeInput, GroupInput, Outcome, ProfileInput, SigmaInput};

/// Prime used when an input omits `p` and `RAMICALC_P` is unset.
pub const DEFAULT_PRIME: u64 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ramicalc",
    version,
    about = "Exact calculator for Herbrand functions, disc profiles and annulus invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Inline JSON (starting with `{`), a file path, or `-` for stdin.
    pub input: String,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Evaluate batches on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct HarmonicityArgs {
    #[command(flatten)]
    pub common: Common,
    /// Sign in the per-layer identity.
    #[arg(long, default_value = "plus")]
    pub convention: Convention,
    /// Also write flow samples for every direction as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Number of grid points per direction in the CSV.
    #[arg(long, default_value_t = 9)]
    pub grid: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Canonical factorization of an element of Λ_p into simple factors.
    LambdaFactor(Common),
    /// Composite `f∘g` of two elements of Λ_p.
    LambdaCompose(Common),
    /// Herbrand function and ramification filtration of a finite group.
    Herbrand(Common),
    /// Canonical tower above a subgroup and its verification.
    Tower(Common),
    /// Newton polygon and profile of a series on a disc.
    Polygon(Common),
    /// Normalized profile and residual degrees at a point.
    Profile(Common),
    /// Radiality classification with its arithmetic check.
    Radial(Common),
    /// Degree, σ and |ε| of an annulus morphism, and σ of a composite.
    Sigma(Common),
    /// Break flows and the different identity on an annulus.
    DifferentCheck(Common),
    /// Direction data, Riemann-Hurwitz and layer identities at the Gauss point.
    Harmonicity(HarmonicityArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LambdaFactor(_) => "lambda-factor",
            Command::LambdaCompose(_) => "lambda-compose",
            Command::Herbrand(_) => "herbrand",
            Command::Tower(_) => "tower",
            Command::Polygon(_) => "polygon",
            Command::Profile(_) => "profile",
            Command::Radial(_) => "radial",
            Command::Sigma(_) => "sigma",
            Command::DifferentCheck(_) => "different-check",
            Command::Harmonicity(_) => "harmonicity",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Harmonicity(h) => &h.common,
            Command::LambdaFactor(c)
            | Command::LambdaCompose(c)
            | Command::Herbrand(c)
            | Command::Tower(c)
            | Command::Polygon(c)
            | Command::Profile(c)
            | Command::Radial(c)
            | Command::Sigma(c)
            | Command::DifferentCheck(c) => c,
        }
    }
}

#[derive(Serialize)]
struct Report<'a, I, R> {
    command: &'a str,
    input: &'a I,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<R>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// A finished run: the report text, its exit code, and CSV when requested.
#[derive(Debug)]
pub struct Rendered {
    pub report: String,
    pub exit_code: i32,
    pub csv: Option<String>,
}

fn render<I: Serialize, R: Serialize>(command: &str, input: &I, outcome: Result<Outcome<R>, String>) -> Rendered {
    let (status, result, error) = match outcome {
        Ok(o) => (if o.passed { "pass" } else { "fail" }, Some(o.result), None),
        Err(e) => ("error", None, Some(e)),
    };
    let exit_code = if status == "pass" { 0 } else { 1 };
    let mut report =
        serde_json::to_string_pretty(&Report { command, input, status, result, error }).expect("reports serialize");
    report.push('\n');
    Rendered { report, exit_code, csv: None }
}

/// Decodes `text` for `command` and runs it. `Err` means the input was
/// rejected before any computation.
pub fn run(command: &Command, text: &str, default_p: u64) -> Result<Rendered, CliError> {
    let name = command.name();
    let exec = if command.common().sequential { Exec::Sequential } else { Exec::Parallel };
    Ok(match command {
        Command::LambdaFactor(_) => {
            let f: LambdaP = decode(text, default_p, &[])?;
            render(name, &f, Ok(jobs::lambda_factor(&f)))
        }
        Command::LambdaCompose(_) => {
            let input: ComposeInput = decode(text, default_p, &["f", "g"])?;
            input.check()?;
            render(name, &input, jobs::lambda_compose(&input))
        }
        Command::Herbrand(_) => {
            let input: GroupInput = decode(text, default_p, &[])?;
            let job = input.resolve(false)?;
            render(name, &input, jobs::herbrand(input.p, &job))
        }
        Command::Tower(_) => {
            let input: GroupInput = decode(text, default_p, &[])?;
            let job = input.resolve(true)?;
            render(name, &input, jobs::tower(input.p, &job))
        }
        Command::Polygon(_) => {
            let f: ValuedSeries = decode(text, default_p, &[])?;
            render(name, &f, jobs::polygon(&f))
        }
        Command::Profile(_) => {
            let input: ProfileInput = decode(text, default_p, &["series"])?;
            input.check()?;
            render(name, &input, jobs::profile_job(&input))
        }
        Command::Radial(_) => {
            let f: ValuedSeries = decode(text, default_p, &[])?;
            render(name, &f, jobs::radial(&f))
        }
        Command::Sigma(_) => {
            let input = SigmaInput::decode(text, default_p)?;
            render(name, &input, jobs::sigma(&input))
        }
        Command::DifferentCheck(_) => {
            let f = jobs::annulus_from(decode(text, default_p, &[])?)?;
            render(name, &f, jobs::different(&f))
        }
        Command::Harmonicity(h) => {
            if h.grid < 2 {
                return Err(CliError::Grid(h.grid));
            }
            let f: ValuedSeries = decode(text, default_p, &[])?;
            let outcome = jobs::harmonicity(&f, h.convention, exec);
            let csv = match (&h.csv, &outcome) {
                (Some(_), Ok(o)) => Some(export_flows(&jobs::plot_directions(&o.result), h.grid)?),
                _ => None,
            };
            Rendered { csv, ..render(name, &f, outcome) }
        }
    })
}

/// `RAMICALC_P` when set, otherwise [`DEFAULT_PRIME`].
pub fn default_prime(env: Option<String>) -> Result<u64, CliError> {
    match env {
        None => Ok(DEFAULT_PRIME),
        Some(s) => s.trim().parse().map_err(|_| CliError::Schema(format!("RAMICALC_P={s:?} is not an integer"))),
    }
}
