use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod render;
mod weights;

use commands::{Failure, Outcome};

/// Loop-graph KMS states and their quantum symmetries.
#[derive(Debug, Parser)]
#[command(name = "qsym", version)]
struct Cli {
    /// Render the report as indented text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Plain ASCII symmetry names.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sink/connectivity flags, vertex matrix and spectral data of a graph file.
    Analyze {
        /// Edge list ("vertices n", "edge s t") or {"vertices", "adjacency"} JSON.
        graph: PathBuf,
    },
    /// Subinvariance and invariance of a weight vector for a graph.
    KmsCheck {
        graph: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        /// Inverse temperature: 0, ln:<rational>, or a decimal.
        #[arg(long, default_value = "0")]
        beta: String,
    },
    /// Partition class and symmetry of a weight vector at beta = 0.
    Classify {
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Symmetry descriptor of a partition such as "2,1".
    Symmetry { partition: String },
    /// Build model representations and verify the coaction relations.
    VerifyAction {
        #[command(flatten)]
        weights: WeightArgs,
        /// Random seed; falls back to QSYM_SEED, then to the built-in default.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = qsym_core::cqg::DEFAULT_TRIALS)]
        trials: usize,
        /// Degree cap for words and random elements.
        #[arg(long = "L", default_value_t = qsym_core::cqg::DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        #[arg(long, default_value_t = qsym_core::cqg::VERIFY_TOL)]
        tol: f64,
        /// Model one block over all loops, ignoring the weights.
        #[arg(long)]
        force_single_block: bool,
    },
    /// Partitions of n, their count and symmetry descriptors.
    Partitions {
        n: usize,
        #[arg(long, default_value_t = qsym_core::partitions::PARTITION_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact unless a decimal literal appears.
    Auto,
    Exact,
    Float,
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    /// Comma-separated weights, e.g. "1/2,1/4,1/4" or "0.5,0.25,0.25".
    #[arg(long)]
    pub weights: String,
    /// Number of vertices; must match the weight count when given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Single-linkage tolerance for float weights.
    #[arg(long, default_value_t = qsym_core::partitions::DEFAULT_GROUPING_EPS)]
    pub eps: f64,
    /// Read decimal literals as exact rationals.
    #[arg(long)]
    pub exact_decimal: bool,
}

fn emit(doc: &serde_json::Value, pretty: bool) {
    let text = if pretty {
        render::render(doc)
    } else {
        serde_json::to_string(doc).expect("reports serialize") + "\n"
    };
    // A closed pipe (`| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli.command, cli.ascii);
    let (doc, code) = match outcome {
        Ok(Outcome { document, exit, notice }) => {
            if let Some(n) = notice {
                eprintln!("qsym: {n}");
            }
            (document, exit)
        }
        Err(Failure { document, code, message }) => {
            eprintln!("qsym: {message}");
            (document, code)
        }
    };
    emit(&doc, cli.pretty);
    ExitCode::from(code)
}
