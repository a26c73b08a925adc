//! `hullkit` command-line front end.
//!
//! Every command prints one JSON report on standard output and diagnostics on
//! standard error. Exit codes: 0 answered, 1 negative answer or infeasible
//! instance, 2 usage or input-format error, 3 resource budget exceeded.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Failure, RunReport};

const FORMATS: &str = "\
Input formats (`#` starts a comment):
  graph         header `n m`, then m lines `u v` (0-based, undirected)
  digraph       header `d n m`, then m arcs `u v`
  set family    header `universe N count K`, then K lines of increasing
                element indices; an empty line is the empty set
  cube vectors  header `cube d count K`, then K binary strings of length d
  cnf           DIMACS `p cnf V C`
  qdimacs       `p cnf V C`, one `e` line, one `a` line, clause lines read
                as DNF terms
  operator table  a set family with 2^N lines; line i is f(X) for the set X
                whose bitmask is i";

#[derive(Parser)]
#[command(name = "hullkit", version, about = "Minimum generators, graph convexity and isometric hulls", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// How to read an operator file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    /// Graph file: geodesic convex hull.
    Graph,
    /// Set family of closed sets: its closure operator.
    ClosedSets,
    /// Set family read as an operator table.
    Table,
}

#[derive(Args)]
pub struct OperatorInput {
    /// Graph, closed-set family or operator table.
    pub file: PathBuf,
    /// Input interpretation; defaults to closed sets for set-family files
    /// and graph otherwise.
    #[arg(long = "as", value_enum)]
    pub kind: Option<OperatorKind>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum generator of every image of an operator.
    Mingen {
        #[command(flatten)]
        input: OperatorInput,
        /// Answer "is the universe generated by at most K elements?"
        /// (exit 1 when not).
        #[arg(long)]
        k: Option<usize>,
        /// Also run the brute-force oracle and report agreement.
        #[arg(long)]
        check: bool,
    },
    /// Hull-number of a connected graph.
    HullNumber {
        graph: PathBuf,
        /// Maximum number of convex sets to enumerate.
        #[arg(long, default_value_t = hullkit::hulls::DEFAULT_CONVEX_SET_BUDGET)]
        budget: usize,
        /// Use the hypercube embedding (partial cubes only).
        #[arg(long)]
        via_reversal: bool,
    },
    /// Geodesic convex hull of a vertex set.
    Conv {
        graph: PathBuf,
        /// Comma-separated vertices, e.g. `0,2,5`.
        #[arg(long, value_parser = commands::parse_list)]
        set: commands::VertexList,
    },
    /// Smallest isometric subgraph containing a vertex set.
    IsoHull {
        graph: PathBuf,
        /// Comma-separated vertices, e.g. `0,2,5`.
        #[arg(long, value_parser = commands::parse_list)]
        set: commands::VertexList,
        /// Branch and bound (default).
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        /// Greedy upper bound.
        #[arg(long)]
        greedy: bool,
        /// Search-node budget of the exact solver.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
    /// Smallest isometric hull set (graphs up to 15 vertices).
    IsoHullNumber { graph: PathBuf },
    /// Is the set an isometric hull set? Exit 1 when not.
    HullSetCheck {
        graph: PathBuf,
        /// Comma-separated vertices, e.g. `0,2,5`.
        #[arg(long, value_parser = commands::parse_list)]
        set: commands::VertexList,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
    /// Lattice of closed sets, or a search for non-graded convexity lattices.
    Lattice {
        /// Graph or closed-set family; omit with --search.
        file: Option<PathBuf>,
        #[arg(long = "as", value_enum)]
        kind: Option<OperatorKind>,
        /// Write the Hasse diagram in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Look for non-graded convexity lattices on up to N vertices.
        #[arg(long, value_name = "N", conflicts_with = "file")]
        search: Option<usize>,
        #[arg(long, default_value_t = 1)]
        limit: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build a reduction instance.
    Reduce(commands::ReduceArgs),
    /// Build a stand-alone gadget.
    Gadget {
        #[command(subcommand)]
        gadget: GadgetKind,
    },
    /// Randomised round-trip checks of a reduction or solver.
    Verify {
        /// One of dom2mgs, hs2cr, cr2hs, hs2hull, sat2hull, mingen, classify,
        /// triangle.
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Print the plain-text table instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Which operator axioms hold.
    ClassifyOperator {
        #[command(flatten)]
        input: OperatorInput,
        /// Sample this many random tests instead of checking every subset.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum GadgetKind {
    /// The triangle gadget T_gamma.
    Triangle {
        #[arg(long)]
        gamma: usize,
        /// Write the graph here and the layout next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Default seed for randomised commands.
pub const DEFAULT_SEED: u64 = 7;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut ctx = commands::Context::default();
    let outcome = run(cli.command, &mut ctx);
    match outcome {
        Ok((result, status)) => {
            let report = RunReport {
                command: std::env::args().skip(1).collect(),
                version: env!("CARGO_PKG_VERSION"),
                inputs: ctx.inputs,
                seed: ctx.seed,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                result,
            };
            if let Some(text) = ctx.text_output {
                print!("{text}");
            } else {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
            }
            status.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

fn run(command: Command, ctx: &mut commands::Context) -> Result<(serde_json::Value, report::Status), Failure> {
    match command {
        Command::Mingen { input, k, check } => commands::mingen(ctx, &input, k, check),
        Command::HullNumber { graph, budget, via_reversal } => commands::hull_number(ctx, &graph, budget, via_reversal),
        Command::Conv { graph, set } => commands::conv(ctx, &graph, &set.0),
        Command::IsoHull { graph, set, greedy, budget, .. } => commands::iso_hull(ctx, &graph, &set.0, greedy, budget),
        Command::IsoHullNumber { graph } => commands::iso_hull_number(ctx, &graph),
        Command::HullSetCheck { graph, set, budget } => commands::hull_set_check(ctx, &graph, &set.0, budget),
        Command::Lattice { file, kind, dot, search, limit, seed } => match (file, search) {
            (_, Some(max_n)) => commands::nongraded_search(ctx, max_n, limit, seed.unwrap_or(DEFAULT_SEED)),
            (Some(file), None) => commands::lattice(ctx, &OperatorInput { file, kind }, dot.as_deref()),
            (None, None) => Err(Failure::Usage("lattice needs an input file or --search N".into())),
        },
        Command::Reduce(args) => commands::reduce(ctx, args),
        Command::Gadget {
            gadget: GadgetKind::Triangle { gamma, out },
        } => commands::triangle(ctx, gamma, out.as_deref()),
        Command::Verify { suite, seed, trials, text } => commands::verify(ctx, &suite, seed.unwrap_or(DEFAULT_SEED), trials, text),
        Command::ClassifyOperator { input, samples, seed } => commands::classify_operator(ctx, &input, samples, seed),
    }
}
