mod commands;
mod ordering;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chordal_td::{Algorithm, Family, PivotRule};
use ordering::OrderSpec;

/// Triangular and regular decomposition of polynomial systems with
/// variable orderings taken from their chordal structure.
#[derive(Parser, Debug)]
#[command(name = "chordal-td", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Associated graph, chordality, elimination ordering and sparsity.
    Analyze {
        /// System file (`-` for stdin).
        input: PathBuf,
        #[arg(long)]
        order: Option<OrderSpec>,
        #[arg(long)]
        json: bool,
        /// Print the associated graph in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Decompose a system into triangular (wang, srs) or regular (regser) systems.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Work over GF(p) instead of the rationals.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        json: bool,
        /// Print the associated graphs of the input and of every output system in DOT.
        #[arg(long)]
        dot: bool,
        /// Leave the decomposition tree out of the JSON output.
        #[arg(long)]
        no_tree: bool,
    },
    /// Check Zero(F) against the union of the output zero sets over small prime fields.
    ///
    /// Accepts a system file or the JSON written by `decompose --json`.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Primes to check over.
        #[arg(long, value_delimiter = ',', default_value = "5,7,11,13")]
        primes: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Median wall time of a family member under several orderings.
    Bench {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value = "regser")]
        alg: Algorithm,
        /// Comma-separated items: `peo`, `natural` or `random:<k>`.
        #[arg(long, default_value = "peo,random:5")]
        orders: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Run the orderings on separate threads.
        #[arg(long)]
        parallel: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_nodes: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a member of a benchmark family as a system file.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long, default_value = "wang")]
    alg: Algorithm,
    /// `x1,x2,..` (smallest first), `natural`, `peo`, `random:<k>` or `auto`.
    /// Defaults to first appearance, or to `auto` when `--s0` is given.
    #[arg(long)]
    order: Option<OrderSpec>,
    /// Sparsity threshold for `--order auto` (default 3/10).
    #[arg(long)]
    s0: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: usize,
    /// Fail once any node holds a polynomial with more terms than this.
    #[arg(long)]
    max_terms: Option<usize>,
    /// Tie-break among pivots of equal degree.
    #[arg(long, default_value = "tail-degree", value_parser = parse_pivot)]
    pivot: PivotRule,
}

fn parse_pivot(s: &str) -> Result<PivotRule, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
        format!("unknown pivot rule `{s}` (expected tail-degree, fewest-terms, first-listed or most-terms)")
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
