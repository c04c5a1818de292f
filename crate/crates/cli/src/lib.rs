//! Command-line front end for the `prevision` crate.

pub mod commands;
pub mod document;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prevision::{Mode, Order};

pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid document: {0}")]
    Json(#[source] serde_json::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] prevision::Error),
}

impl CliError {
    pub fn field(path: &str, message: impl Into<String>) -> Self {
        CliError::Field {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "prevision", version, about = "Consistency checks for conditional lower previsions")]
pub struct Cli {
    /// Print the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "2convex")]
    TwoConvex,
    #[value(name = "2coherent")]
    TwoCoherent,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::TwoConvex => Mode::TwoConvex,
            ModeArg::TwoCoherent => Mode::TwoCoherent,
        }
    }
}

pub fn parse_order(s: &str) -> Result<Order, String> {
    match s.trim() {
        "inf" | "∞" => Ok(Order::Unbounded),
        t => t
            .parse::<usize>()
            .map(Order::Finite)
            .map_err(|_| format!("'{s}' is neither a positive integer nor 'inf'")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an assessment against one consistency class or all of them.
    Check {
        file: PathBuf,
        /// internality, 1-aul, 2-convex, centered-2-convex, 2-coherent,
        /// n-convex, n-coherent, convex, c-convex, coherent or capacity.
        #[arg(long, conflicts_with = "all")]
        class: Option<String>,
        #[arg(long)]
        all: bool,
        /// Order for the n-term classes: an integer or `inf`.
        #[arg(long, value_parser = parse_order)]
        n: Option<Order>,
    },
    /// Compute a natural extension on target gambles.
    Extend {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// `NAME` or `NAME|EVENT`; defaults to every assessed entry.
        #[arg(long = "target")]
        targets: Vec<String>,
    },
    /// Verify the Generalized Bayes Rule family on a single gamble.
    Gbr(GbrArgs),
    /// Value-at-Risk previsions and their consistency.
    Var(VarArgs),
}

#[derive(Debug, Args)]
pub struct GbrArgs {
    /// Comma-separated atom names; `w0, w1, ...` by default.
    #[arg(long)]
    pub atoms: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamble_values: String,
    /// Comma-separated atoms of the conditioning event.
    #[arg(long)]
    pub event: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub pa: String,
    #[arg(long, allow_hyphen_values = true)]
    pub pxa: String,
}

#[derive(Debug, Args)]
pub struct VarArgs {
    #[arg(long)]
    pub atoms: Option<String>,
    /// Comma-separated probabilities of the atoms.
    #[arg(long)]
    pub probs: String,
    #[arg(long)]
    pub alpha: String,
    /// JSON object mapping gamble names to values.
    #[arg(long)]
    pub gambles: Option<PathBuf>,
    /// `NAME=v1,v2,...`; may be repeated.
    #[arg(long = "gamble", allow_hyphen_values = true)]
    pub gamble: Vec<String>,
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Check { file, class, n, .. } => {
            let doc = commands::load(file)?;
            commands::cmd_check(&doc, class.as_deref(), *n)
        }
        Command::Extend {
            file,
            mode,
            targets,
        } => {
            let doc = commands::load(file)?;
            commands::cmd_extend(&doc, (*mode).into(), targets)
        }
        Command::Gbr(args) => commands::cmd_gbr(args),
        Command::Var(args) => commands::cmd_var(args),
    }
}
