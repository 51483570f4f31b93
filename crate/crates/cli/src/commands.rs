use std::fs;
use std::io::{self, Read};
use std::path::Path as FsPath;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::json;
use wavegrid::{
    astar, backtrack, compare as compare_map, dijkstra, flood, generate_map, parse_map,
    render_path, render_trace, run_suite, Algo, BacktrackMode, CompareOptions, CornerRule,
    FloodTrace, GenError, GenSpec, GridMap, SearchError, SearchResult,
};

use crate::{AlgoArg, CompareArgs, GenArgs, RenderArgs, SolveArgs, SuiteArgs};

const SOLVED: u8 = 0;
const NOT_FOUND: u8 = 1;

fn read_map(path: &FsPath) -> Result<GridMap> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading map from stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_map(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&FsPath>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cells_line(cells: &[wavegrid::Coord]) -> String {
    cells
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn solve(args: SolveArgs) -> Result<ExitCode> {
    let map = read_map(&args.map)?;
    let rule: CornerRule = args.common.corner_cut.into();
    if args.algo != AlgoArg::Wavefront && (args.trace.is_some() || args.all_paths) {
        bail!("--trace and --all-paths need --algo wavefront");
    }
    if args.max_paths == 0 {
        bail!("--max-paths must be at least 1");
    }
    let out = args.common.out.as_deref();
    match args.algo {
        AlgoArg::Wavefront => solve_wavefront(&map, rule, &args, out),
        AlgoArg::Dijkstra => report_search(&map, dijkstra(&map, rule), args.json, out),
        AlgoArg::Astar => report_search(
            &map,
            astar(&map, rule, args.heuristic.into()),
            args.json,
            out,
        ),
    }
}

fn solve_wavefront(
    map: &GridMap,
    rule: CornerRule,
    args: &SolveArgs,
    out: Option<&FsPath>,
) -> Result<ExitCode> {
    let outcome = flood(map, rule, true);
    if let Some(path) = &args.trace {
        fs::write(path, outcome.trace.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mode = if args.all_paths {
        BacktrackMode::All
    } else {
        BacktrackMode::First
    };
    let paths = match backtrack(&outcome.field, map, rule, mode, args.max_paths) {
        Ok(p) => Some(p),
        Err(SearchError::NoPath | SearchError::NoDestination) => None,
        Err(e) => return Err(e.into()),
    };
    let cells_costed = outcome.field.finite_count();

    let text = if args.json {
        let set = paths.clone().unwrap_or_default();
        let mut v = json!({
            "algo": "wavefront",
            "corner_rule": rule.name(),
            "reached": outcome.reached_destination,
            "iterations": outcome.iterations_run,
            "cells_costed": cells_costed,
        });
        let set = serde_json::to_value(&set)?;
        v.as_object_mut()
            .expect("object")
            .extend(set.as_object().expect("object").clone());
        format!("{v}\n")
    } else {
        let mut s = String::new();
        match &paths {
            Some(set) => {
                s += &format!(
                    "wavefront: destination reached in {} iterations, {} cells costed\n",
                    outcome.iterations_run, cells_costed
                );
                for (i, p) in set.paths.iter().enumerate() {
                    s += &format!(
                        "path {} ({} steps): {}\n",
                        i + 1,
                        p.len(),
                        cells_line(p.cells())
                    );
                }
                if set.truncated {
                    s += &format!("(stopped after {} paths)\n", set.len());
                }
                if let Some(p) = set.first() {
                    s += &render_path(map, p);
                }
            }
            None => {
                let why = if map.destination().is_none() {
                    "map has no destination"
                } else {
                    "destination unreachable"
                };
                s += &format!(
                    "no path: {why}; flooded {} cells in {} iterations\n",
                    cells_costed, outcome.iterations_run
                );
            }
        }
        s
    };
    emit(out, &text)?;
    Ok(ExitCode::from(if paths.is_some() {
        SOLVED
    } else {
        NOT_FOUND
    }))
}

fn report_search(
    map: &GridMap,
    result: Result<SearchResult, SearchError>,
    as_json: bool,
    out: Option<&FsPath>,
) -> Result<ExitCode> {
    let result = match result {
        Ok(r) => r,
        Err(SearchError::NoDestination) => {
            let text = if as_json {
                "{\"error\":\"map has no destination\",\"path\":null}\n".to_string()
            } else {
                "no path: map has no destination\n".to_string()
            };
            emit(out, &text)?;
            return Ok(ExitCode::from(NOT_FOUND));
        }
        Err(e) => return Err(e.into()),
    };
    let name = match result.algo.heuristic() {
        Some(h) => format!("{} ({})", result.algo.name(), h.name()),
        None => result.algo.name().to_string(),
    };
    let text = if as_json {
        format!("{}\n", serde_json::to_string(&result)?)
    } else {
        match &result.path {
            Some(p) => format!(
                "{name}: {} steps, {} expansions\npath: {}\n{}",
                p.len(),
                result.expansions,
                cells_line(p.cells()),
                render_path(map, p)
            ),
            None => format!(
                "no path: destination unreachable; {name} expanded {} cells\n",
                result.expansions
            ),
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::from(if result.path.is_some() {
        SOLVED
    } else {
        NOT_FOUND
    }))
}

fn parse_algos(names: &[String], default_heuristic: wavegrid::Heuristic) -> Result<Vec<Algo>> {
    names
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            Algo::parse(s, default_heuristic).with_context(|| format!("unknown algorithm {s:?}"))
        })
        .collect()
}

fn table(report: &wavegrid::ComparisonReport) -> String {
    let dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let mut s = format!(
        "map {}x{}  traversable {}  obstacles {}\n",
        report.map.width, report.map.height, report.map.nodes_total, report.map.obstacles
    );
    s += &format!(
        "{:<16} {:>10} {:>10} {:>12} {:>8} {:>6} {:>10}\n",
        "algo", "iterations", "expansions", "cells_costed", "length", "paths", "elapsed_us"
    );
    for r in &report.results {
        s += &format!(
            "{:<16} {:>10} {:>10} {:>12} {:>8} {:>6} {:>10}\n",
            r.label(),
            dash(r.iterations.map(|v| v.to_string())),
            dash(r.expansions.map(|v| v.to_string())),
            r.cells_costed,
            dash(r.path_length.map(|v| v.to_string())),
            r.path_count,
            dash(r.elapsed_us.map(|v| v.to_string())),
        );
    }
    s
}

pub fn compare(args: CompareArgs) -> Result<ExitCode> {
    let map = read_map(&args.map)?;
    let algos = parse_algos(&args.algos, args.heuristic.into())?;
    if map.destination().is_none() {
        bail!("compare needs a map with a destination `D`");
    }
    let opts = CompareOptions {
        max_paths: args.max_paths.max(1),
        timing: !args.no_timing,
        seed: None,
    };
    let report = compare_map(&map, &algos, args.common.corner_cut.into(), &opts)?;
    let text = if args.json {
        format!("{}\n", report.to_json())
    } else if args.csv {
        report.to_csv()
    } else {
        table(&report)
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::from(SOLVED))
}

pub fn gen(args: GenArgs) -> Result<ExitCode> {
    let mut spec = GenSpec::new(args.width, args.height, args.density, args.seed);
    spec.require_solvable = args.solvable;
    match generate_map(&spec) {
        Ok(map) => {
            emit(args.out.as_deref(), &map.render())?;
            Ok(ExitCode::from(SOLVED))
        }
        Err(e @ GenError::Unsatisfiable { .. }) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(NOT_FOUND))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn render(args: RenderArgs) -> Result<ExitCode> {
    let map = read_map(&args.map)?;
    let trace: FloodTrace = match &args.trace {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing trace {}", path.display()))?
        }
        None => flood(&map, args.common.corner_cut.into(), !args.full).trace,
    };
    let mut frames = render_trace(&map, &trace, args.style.into())?;
    if let Some(k) = args.frame {
        if k >= frames.frames.len() {
            bail!(
                "frame {k} out of range, trace has {} frames",
                frames.frames.len()
            );
        }
        frames.frames = vec![frames.frames.swap_remove(k)];
    }
    let text = if args.json {
        format!("{}\n", serde_json::to_string(&frames)?)
    } else {
        frames.to_string()
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::from(SOLVED))
}

fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().context("seed range start")?;
        let b: u64 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .context("seed range end")?;
        if a > b {
            bail!("empty seed range {s}");
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![s.parse().context("seed")?])
    }
}

pub fn suite(args: SuiteArgs) -> Result<ExitCode> {
    let algos = parse_algos(&args.algos, wavegrid::Heuristic::Chebyshev)?;
    let specs: Vec<GenSpec> = parse_seeds(&args.seeds)?
        .into_iter()
        .map(|seed| GenSpec {
            require_solvable: args.solvable,
            ..GenSpec::new(args.width, args.height, args.density, seed)
        })
        .collect();
    let opts = CompareOptions {
        timing: args.timing,
        ..CompareOptions::default()
    };
    let report = run_suite(&specs, &algos, args.common.corner_cut.into(), &opts);
    let text = if args.csv {
        report.to_csv()
    } else {
        format!("{}\n", report.to_json())
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::from(SOLVED))
}
