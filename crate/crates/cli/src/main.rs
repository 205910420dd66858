//! `lincolor`: linear and centered colorings, treedepth, tree ranking,
//! interval decompositions and the satisfiability gadget from the shell.
//!
//! Data goes to stdout (or `--out`); every run ends with one JSON run report
//! on stderr. Exit codes: 0 success or positive verdict, 1 negative verdict,
//! 2 usage or input error, 3 search budget exhausted.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use lincolor::Budget;
use serde_json::{json, Map, Value};

use input::{Format, Inputs};

#[derive(Debug, Parser)]
#[command(
    name = "lincolor",
    version,
    about = "Linear and centered graph colorings and treedepth"
)]
struct Cli {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node limit for exponential searches
    #[arg(long, global = true, default_value_t = Budget::default().nodes)]
    budget_nodes: u64,
    /// Wall-clock limit for exponential searches, in milliseconds
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Write the data output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a family instance as a graph bundle
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Also write graph.el, coloring.json and metadata.json into this directory
        #[arg(long, global = true)]
        emit_files: Option<PathBuf>,
    },
    /// Check whether a coloring is linear or centered
    Verify {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Linear)]
        mode: Mode,
    },
    /// Exact treedepth or coloring numbers of a small graph
    Exact {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Measure::Treedepth)]
        measure: Measure,
    },
    /// Optimal vertex ranking of a tree
    Rank {
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Root vertex (default: smallest-id leaf)
        #[arg(long)]
        root: Option<usize>,
        /// Include every merge step
        #[arg(long)]
        trace: bool,
    },
    /// Centered coloring of an interval graph from a linear one
    Decompose {
        #[arg(long)]
        intervals: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Build the path gadget of a CNF formula
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        /// Also write graph.el, coloring.json and metadata.json into this directory
        #[arg(long)]
        emit_files: Option<PathBuf>,
    },
    /// Search for a path on which no color occurs exactly once
    SearchNclc {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Translate between edge list, DOT and bundle JSON
    Convert {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Input format (default: from the extension or the content)
        #[arg(long, value_enum)]
        from: Option<Format>,
        #[arg(long, value_enum)]
        to: Format,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Clique with recursive pendant copies, colored linearly with i colors
    Rclique {
        #[arg(long)]
        i: usize,
    },
    /// Complete binary tree; with --stripe-a the striped linear coloring
    Btree {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        stripe_a: Option<usize>,
    },
    /// Uniform random labeled tree
    RandomTree {
        #[arg(long)]
        n: usize,
    },
    /// Random interval graph
    RandomInterval {
        #[arg(long)]
        n: usize,
        /// Range of left endpoints (default 2n)
        #[arg(long)]
        span: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Linear,
    Centered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    Treedepth,
    ChiLin,
    ChiCen,
}

/// Why a run stopped short of a verdict.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Budget(u64),
}

impl From<lincolor::Error> for Failure {
    fn from(e: lincolor::Error) -> Self {
        match e {
            lincolor::Error::BudgetExceeded { nodes } => Failure::Budget(nodes),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

/// Result of a successful run: the data document, its verdict and the
/// statistics for the report.
pub struct Outcome {
    pub doc: String,
    pub positive: bool,
    pub stats: Map<String, Value>,
}

impl Outcome {
    pub fn new(doc: &impl serde::Serialize, positive: bool) -> Self {
        Outcome {
            doc: serde_json::to_string(doc).expect("documents serialize") + "\n",
            positive,
            stats: Map::new(),
        }
    }

    pub fn stat(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.stats.insert(key.to_string(), value.into());
        self
    }
}

pub struct Ctx {
    pub seed: u64,
    pub budget: Budget,
    pub inputs: Inputs,
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Verify { .. } => "verify",
        Command::Exact { .. } => "exact",
        Command::Rank { .. } => "rank",
        Command::Decompose { .. } => "decompose",
        Command::Reduce { .. } => "reduce",
        Command::SearchNclc { .. } => "search-nclc",
        Command::Convert { .. } => "convert",
    }
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Gen { family, emit_files } => commands::gen(ctx, family, emit_files.as_deref()),
        Command::Verify {
            graph,
            coloring,
            mode,
        } => commands::verify(ctx, graph.as_deref(), coloring.as_deref(), *mode),
        Command::Exact { graph, measure } => commands::exact(ctx, graph.as_deref(), *measure),
        Command::Rank { graph, root, trace } => {
            commands::rank(ctx, graph.as_deref(), *root, *trace)
        }
        Command::Decompose {
            intervals,
            coloring,
        } => commands::decompose(ctx, intervals, coloring),
        Command::Reduce { cnf, emit_files } => commands::reduce(ctx, cnf, emit_files.as_deref()),
        Command::SearchNclc { graph, coloring } => {
            commands::search_nclc(ctx, graph.as_deref(), coloring.as_deref())
        }
        Command::Convert { input, from, to } => {
            commands::convert(ctx, input.as_deref(), *from, *to)
        }
    }
}

fn report(
    subcommand: &str,
    digest: &str,
    verdict: &str,
    code: u8,
    stats: Map<String, Value>,
    start: Instant,
) {
    let r = json!({
        "subcommand": subcommand,
        "inputs_digest": digest,
        "verdict": verdict,
        "exit_code": code,
        "stats": stats,
        "wall_ms": start.elapsed().as_secs_f64() * 1000.0,
    });
    eprintln!("{r}");
}

fn main() -> ExitCode {
    let start = Instant::now();
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("usage error"));
            let digest = Inputs::new(&args[1..]).digest();
            report("none", &digest, "usage_error", 2, Map::new(), start);
            return ExitCode::from(2);
        }
    };
    let mut budget = Budget::nodes(cli.budget_nodes);
    if let Some(ms) = cli.budget_ms {
        budget = budget.with_time(Duration::from_millis(ms));
    }
    let mut ctx = Ctx {
        seed: cli.seed,
        budget,
        inputs: Inputs::new(&args[1..]),
    };
    let name = subcommand_name(&cli.command);
    let result = run(&cli, &mut ctx).and_then(|outcome| {
        match &cli.out {
            Some(path) => std::fs::write(path, &outcome.doc)
                .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{}", outcome.doc),
        }
        Ok(outcome)
    });
    let digest = ctx.inputs.digest();
    let (verdict, code, stats) = match result {
        Ok(o) if o.positive => ("ok", 0, o.stats),
        Ok(o) => ("negative", 1, o.stats),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ("usage_error", 2, Map::new())
        }
        Err(Failure::Budget(nodes)) => {
            eprintln!("error: search budget exhausted after {nodes} nodes");
            let mut stats = Map::new();
            stats.insert("nodes".into(), nodes.into());
            ("budget_exceeded", 3, stats)
        }
    };
    report(name, &digest, verdict, code, stats, start);
    ExitCode::from(code)
}
