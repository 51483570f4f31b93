//! `wavegrid` command-line front end.
//!
//! Exit status: 0 solved, 1 no path or unsatisfiable generation, 2 bad input
//! or usage.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wavegrid::{CornerRule, Heuristic, Style, DEFAULT_MAX_PATHS};

#[derive(Parser, Debug)]
#[command(
    name = "wavegrid",
    version,
    about = "Grid shortest paths by wavefront expansion and backtracking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find the shortest path(s) from S to D in a map file.
    Solve(SolveArgs),
    /// Run several algorithms on one map and report their counters.
    Compare(CompareArgs),
    /// Print a seeded random map.
    Gen(GenArgs),
    /// Dump a flood as ASCII frames, one per iteration.
    Render(RenderArgs),
    /// Generate a batch of maps and compare algorithms on each.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Diagonal moves between two blocked orthogonal cells.
    #[arg(long = "corner-cut", value_enum, default_value_t = RuleArg::Allow)]
    corner_cut: RuleArg,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Map file (`-` for stdin).
    map: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgoArg::Wavefront)]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value_t = HeuristicArg::Chebyshev)]
    heuristic: HeuristicArg,
    /// Enumerate every tied shortest path (wavefront only).
    #[arg(long)]
    all_paths: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_PATHS)]
    max_paths: usize,
    #[arg(long)]
    json: bool,
    /// Write the flood trace JSON to this file (wavefront only).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CompareArgs {
    map: PathBuf,
    /// Comma-separated: wavefront, dijkstra, astar, astar-chebyshev, astar-euclidean.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "wavefront,dijkstra,astar-chebyshev,astar-euclidean"
    )]
    algos: Vec<String>,
    /// Heuristic for a bare `astar` entry.
    #[arg(long, value_enum, default_value_t = HeuristicArg::Chebyshev)]
    heuristic: HeuristicArg,
    #[arg(long, default_value_t = DEFAULT_MAX_PATHS)]
    max_paths: usize,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Leave elapsed_us empty so output is reproducible.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Retry until the destination is reachable.
    #[arg(long)]
    solvable: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    map: PathBuf,
    #[arg(long, value_enum, default_value_t = StyleArg::Marks)]
    style: StyleArg,
    /// Flood the whole component instead of stopping at D.
    #[arg(long)]
    full: bool,
    /// Only print this frame (0 is the map before expansion).
    #[arg(long)]
    frame: Option<usize>,
    /// Render this trace JSON instead of flooding the map.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = 30)]
    width: usize,
    #[arg(long, default_value_t = 30)]
    height: usize,
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    /// Inclusive seed range, e.g. `1..200`, or a single seed.
    #[arg(long, default_value = "1..200")]
    seeds: String,
    #[arg(long)]
    solvable: bool,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "wavefront,dijkstra,astar-chebyshev,astar-euclidean"
    )]
    algos: Vec<String>,
    #[arg(long)]
    csv: bool,
    /// Record wall time per run (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum AlgoArg {
    Wavefront,
    Dijkstra,
    Astar,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum HeuristicArg {
    Chebyshev,
    Euclidean,
}

impl From<HeuristicArg> for Heuristic {
    fn from(h: HeuristicArg) -> Self {
        match h {
            HeuristicArg::Chebyshev => Heuristic::Chebyshev,
            HeuristicArg::Euclidean => Heuristic::Euclidean,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum RuleArg {
    Allow,
    Forbid,
}

impl From<RuleArg> for CornerRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Allow => CornerRule::Allow,
            RuleArg::Forbid => CornerRule::Forbid,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum StyleArg {
    Marks,
    Costs,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Marks => Style::Marks,
            StyleArg::Costs => Style::Costs,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Compare(a) => commands::compare(a),
        Command::Gen(a) => commands::gen(a),
        Command::Render(a) => commands::render(a),
        Command::Suite(a) => commands::suite(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
