//! `packset`: exact computations on integer packing sets, packing
//! polyhedra, and their aggregation closures.
//!
//! Every run reads JSON instances, emits exactly one JSON document, and is
//! a pure function of its inputs and flags; reruns are byte-identical.
//! Wall-clock timing goes to stderr so it cannot perturb the output.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::report::{CliError, Output};

#[derive(Parser)]
#[command(
    name = "packset",
    about = "Integer packing sets, packing polyhedra, and aggregation closures in exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Write the JSON document to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Integer hull of a single-piece instance, in packing H-form.
    Hull {
        /// Instance file ("-" for stdin).
        instance: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// k-aggregation closure of an instance (exact where certified).
    Closure {
        instance: String,
        /// Number of aggregations per tuple.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Truncation box as comma-separated naturals, one per coordinate.
        #[arg(long, value_delimiter = ',')]
        r#box: Option<Vec<u64>>,
        /// Run this many sampled verification checks and append the report.
        #[arg(long)]
        verify: Option<usize>,
        /// Seed for sampled verification.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Infinite aggregation closure (always exact).
    #[command(name = "closure-inf")]
    ClosureInf {
        instance: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Operations on packing sets.
    Packset {
        #[command(subcommand)]
        op: PacksetOp,
    },
    /// Block decomposition of a packing set.
    Blocks {
        set: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Stream packing sets through finite-basis extraction.
    #[command(name = "wqo-basis")]
    WqoBasis {
        stream: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Re-verify a stored closure result against its instance.
    Verify {
        result: String,
        instance: String,
        /// Number of sampled support checks.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand)]
enum PacksetOp {
    /// Is the first set contained in the second?
    Subset {
        left: String,
        right: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    Union {
        left: String,
        right: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    Intersect {
        left: String,
        right: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The packing set one dimension down at the given last coordinate.
    Slice {
        set: String,
        level: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    Blocks {
        set: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Maximal lattice points of a knapsack inequality {"c": [...], "d": ...}.
    #[command(name = "from-knapsack")]
    FromKnapsack {
        ineq: String,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = report::run(cli.command);
    eprintln!("elapsed_ms={}", started.elapsed().as_millis());
    match outcome {
        Ok(Output::Stdout(doc)) => {
            println!("{doc}");
            ExitCode::SUCCESS
        }
        Ok(Output::File(path, doc)) => {
            if let Err(e) = std::fs::write(&path, format!("{doc}\n")) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError { document, message, code }) => {
            if let Some(doc) = document {
                println!("{doc}");
            }
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
