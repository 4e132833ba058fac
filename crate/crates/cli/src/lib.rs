//! `leeform` command line: every subcommand produces one JSON [`Report`].

mod commands;
mod render;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

pub use commands::CommandError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

/// Field order is the serialization order; nested maps have sorted keys.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// What the binary should do after a run.
#[derive(Debug)]
pub enum Outcome {
    Report { report: Report, table: String, code: i32 },
    /// `--help` / `--version` text, or a usage error message for stderr.
    Text { text: String, code: i32 },
}

#[derive(Parser, Debug)]
#[command(name = "leeform", version, about = "Exterior algebra and Lee-form checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank and kernel of a 2-form (constant, or a differential form at --point / over --grid).
    Rank {
        form: String,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Solve Omega ^ beta = kappa exactly.
    Solve {
        omega: String,
        kappa: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// Solve d(omega) = beta ^ omega pointwise; verify a candidate beta symbolically.
    Lee {
        omega: String,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Pointwise sets A = {r > 2}, B = {d(beta) != 0, omega != 0}, C = {r <= 1}.
    Classify {
        omega: String,
        beta: String,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Randomized kernel-lemma checks on forms of the given rank.
    LemmaCheck {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ranks of beta -> Omega ^ beta on every degree.
    LambdaReport {
        omega: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// Check the identities of the built-in examples.
    VerifyPaper,
}

/// Parse `argv` (without the program name) and run the command.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args = std::iter::once("leeform").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome::Text {
                text: e.render().to_string(),
                code,
            };
        }
    };
    let (name, result) = match cli.command {
        Command::Rank { form, point, grid } => {
            ("rank", commands::rank(&form, point.as_deref(), grid.as_deref()))
        }
        Command::Solve { omega, kappa, point } => {
            ("solve", commands::solve(&omega, &kappa, point.as_deref()))
        }
        Command::Lee { omega, beta, grid } => {
            ("lee", commands::lee(&omega, beta.as_deref(), grid.as_deref()))
        }
        Command::Classify { omega, beta, grid } => {
            ("classify", commands::classify(&omega, &beta, grid.as_deref()))
        }
        Command::LemmaCheck {
            dim,
            rank,
            deg,
            trials,
            seed,
        } => ("lemma-check", commands::lemma_check(dim, rank, deg, trials, seed)),
        Command::LambdaReport { omega, point } => {
            ("lambda-report", commands::lambda_report(&omega, point.as_deref()))
        }
        Command::VerifyPaper => ("verify-paper", commands::verify_paper()),
    };
    match result {
        Ok(done) => {
            let code = if done.status == Status::Pass { 0 } else { 1 };
            Outcome::Report {
                table: done.table,
                report: Report {
                    command: name.to_string(),
                    inputs: done.inputs,
                    results: done.results,
                    status: done.status,
                },
                code,
            }
        }
        Err(e) => Outcome::Report {
            report: Report {
                command: name.to_string(),
                inputs: Value::Array(
                    argv.iter()
                        .map(|a| Value::String(a.as_ref().to_string()))
                        .collect(),
                ),
                results: serde_json::json!({ "error": e.to_string() }),
                status: Status::Fail,
            },
            table: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
