//! Seeded map generation, per-algorithm counters and comparison reports.
//!
//! # Generator
//!
//! Maps are drawn from a ChaCha8 stream seeded with the 64-bit seed
//! (`ChaCha8Rng::seed_from_u64`), so a seed is a portable test vector. Each
//! attempt:
//!
//! 1. frames the map with `#`;
//! 2. visits interior cells in row-major order and makes each an obstacle when
//!    a uniform draw in `[0, 1)` is below `density`;
//! 3. picks the source uniformly among the remaining passable cells, then the
//!    destination uniformly among the others.
//!
//! With `require_solvable`, an attempt whose destination is unreachable under
//! [`CornerRule::Forbid`] (and therefore under either rule) is discarded and
//! the next attempt continues the same stream. After [`MAX_ATTEMPTS`] failed
//! attempts generation gives up.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backtrack::{backtrack, BacktrackMode, DEFAULT_MAX_PATHS};
use crate::baselines::{astar, bfs8_distance_field, dijkstra, Heuristic};
use crate::error::SearchError;
use crate::grid::{CellKind, CornerRule, GridMap};
use crate::wavefront::flood;

pub const MAX_ATTEMPTS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub width: usize,
    pub height: usize,
    pub density: f64,
    pub seed: u64,
    pub require_solvable: bool,
}

impl GenSpec {
    pub fn new(width: usize, height: usize, density: f64, seed: u64) -> Self {
        GenSpec {
            width,
            height,
            density,
            seed,
            require_solvable: false,
        }
    }

    pub fn solvable(mut self) -> Self {
        self.require_solvable = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("map must be at least 3x3, got {width}x{height}")]
    TooSmall { width: usize, height: usize },
    #[error("density must lie in [0, 1], got {0}")]
    BadDensity(f64),
    #[error("no acceptable map after {attempts} attempts")]
    Unsatisfiable { attempts: u32 },
}

fn draw_map(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Option<GridMap> {
    let (w, h) = (spec.width, spec.height);
    let mut cells = vec![CellKind::Boundary; w * h];
    let mut open = Vec::new();
    for row in 1..h - 1 {
        for col in 1..w - 1 {
            let i = row * w + col;
            if rng.random::<f64>() < spec.density {
                cells[i] = CellKind::Obstacle;
            } else {
                cells[i] = CellKind::Passable;
                open.push(i);
            }
        }
    }
    if open.len() < 2 {
        return None;
    }
    let s = rng.random_range(0..open.len());
    let mut d = rng.random_range(0..open.len() - 1);
    if d >= s {
        d += 1;
    }
    cells[open[s]] = CellKind::Source;
    cells[open[d]] = CellKind::Destination;
    Some(GridMap::from_cells(w, h, cells).expect("one source, one destination"))
}

fn solvable(map: &GridMap) -> bool {
    let dest = map
        .destination()
        .expect("generated maps have a destination");
    bfs8_distance_field(map, CornerRule::Forbid)
        .get(dest)
        .is_finite()
}

/// Deterministically generates a framed random map.
pub fn generate_map(spec: &GenSpec) -> Result<GridMap, GenError> {
    if spec.width < 3 || spec.height < 3 {
        return Err(GenError::TooSmall {
            width: spec.width,
            height: spec.height,
        });
    }
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(GenError::BadDensity(spec.density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(map) = draw_map(spec, &mut rng) {
            if !spec.require_solvable || solvable(&map) {
                return Ok(map);
            }
        }
    }
    Err(GenError::Unsatisfiable {
        attempts: MAX_ATTEMPTS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Wavefront,
    Dijkstra,
    AStar(Heuristic),
}

impl Algo {
    pub const ALL: [Algo; 4] = [
        Algo::Wavefront,
        Algo::Dijkstra,
        Algo::AStar(Heuristic::Chebyshev),
        Algo::AStar(Heuristic::Euclidean),
    ];

    /// `wavefront`, `dijkstra`, `astar-chebyshev` or `astar-euclidean`.
    pub fn label(self) -> &'static str {
        match self {
            Algo::Wavefront => "wavefront",
            Algo::Dijkstra => "dijkstra",
            Algo::AStar(Heuristic::Chebyshev) => "astar-chebyshev",
            Algo::AStar(Heuristic::Euclidean) => "astar-euclidean",
        }
    }

    fn name(self) -> &'static str {
        match self {
            Algo::Wavefront => "wavefront",
            Algo::Dijkstra => "dijkstra",
            Algo::AStar(_) => "astar",
        }
    }

    fn heuristic(self) -> Option<Heuristic> {
        match self {
            Algo::AStar(h) => Some(h),
            _ => None,
        }
    }

    /// Parses a label; bare `astar` takes `default_heuristic`.
    pub fn parse(s: &str, default_heuristic: Heuristic) -> Option<Algo> {
        Some(match s {
            "wavefront" => Algo::Wavefront,
            "dijkstra" => Algo::Dijkstra,
            "astar" => Algo::AStar(default_heuristic),
            "astar-chebyshev" => Algo::AStar(Heuristic::Chebyshev),
            "astar-euclidean" => Algo::AStar(Heuristic::Euclidean),
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOptions {
    pub max_paths: usize,
    /// Record wall time per run. Off makes reports reproducible byte for byte.
    pub timing: bool,
    /// Seed the map came from, copied into the report.
    pub seed: Option<u64>,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            max_paths: DEFAULT_MAX_PATHS,
            timing: true,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapInfo {
    pub width: usize,
    pub height: usize,
    pub seed: Option<u64>,
    /// Traversable cells.
    pub nodes_total: usize,
    pub obstacles: usize,
}

/// One algorithm's run. Wavefront fills `iterations`; the searches fill
/// `expansions`. `cells_costed` is the wavefront's finite-cost count or the
/// cells a search generated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgoRecord {
    pub algo: String,
    pub heuristic: Option<Heuristic>,
    pub iterations: Option<u32>,
    pub expansions: Option<usize>,
    pub cells_costed: usize,
    pub path_length: Option<usize>,
    pub path_count: usize,
    pub elapsed_us: Option<u64>,
}

impl AlgoRecord {
    pub fn label(&self) -> String {
        match self.heuristic {
            Some(h) => format!("{}-{}", self.algo, h.name()),
            None => self.algo.clone(),
        }
    }

    fn is_euclidean(&self) -> bool {
        self.heuristic == Some(Heuristic::Euclidean)
    }
}

/// Measured stand-ins for the symbols of the usual complexity comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityCounters {
    pub nodes_total: usize,
    pub obstacles_count: usize,
    /// Wavefront iterations, or optimal depth for the searches.
    pub steps_to_destination: Option<usize>,
    pub expansions: Option<usize>,
    pub cells_costed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub map: MapInfo,
    pub results: Vec<AlgoRecord>,
}

impl ComparisonReport {
    pub fn record(&self, algo: Algo) -> Option<&AlgoRecord> {
        self.results
            .iter()
            .find(|r| r.algo == algo.name() && r.heuristic == algo.heuristic())
    }

    pub fn counters(&self, algo: Algo) -> Option<ComplexityCounters> {
        let r = self.record(algo)?;
        Some(ComplexityCounters {
            nodes_total: self.map.nodes_total,
            obstacles_count: self.map.obstacles,
            steps_to_destination: match algo {
                Algo::Wavefront => r.path_length.and(r.iterations.map(|i| i as usize)),
                _ => r.path_length,
            },
            expansions: r.expansions,
            cells_costed: r.cells_costed,
        })
    }

    /// Every algorithm agrees on reachability, and all but A* with the
    /// straight-line heuristic report the same length, which is a lower
    /// bound for that one.
    pub fn lengths_consistent(&self) -> bool {
        let exact: Vec<_> = self
            .results
            .iter()
            .filter(|r| !r.is_euclidean())
            .map(|r| r.path_length)
            .collect();
        let reference = self.results.first().map(|r| r.path_length.is_some());
        let reach_agrees = self
            .results
            .iter()
            .all(|r| Some(r.path_length.is_some()) == reference);
        let exact_agrees = exact.windows(2).all(|w| w[0] == w[1]);
        let euclid_bounded = match exact.first() {
            Some(Some(opt)) => self
                .results
                .iter()
                .filter(|r| r.is_euclidean())
                .all(|r| r.path_length.is_some_and(|l| l >= *opt)),
            _ => true,
        };
        reach_agrees && exact_agrees && euclid_bounded
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.results {
            w.serialize(CsvRow::new(&self.map, None, r, None))
                .expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    width: usize,
    height: usize,
    seed: Option<u64>,
    density: Option<f64>,
    algo: &'a str,
    heuristic: Option<&'static str>,
    iterations: Option<u32>,
    expansions: Option<usize>,
    cells_costed: Option<usize>,
    path_length: Option<usize>,
    path_count: Option<usize>,
    elapsed_us: Option<u64>,
    error: Option<&'a str>,
}

impl<'a> CsvRow<'a> {
    fn new(map: &MapInfo, density: Option<f64>, r: &'a AlgoRecord, error: Option<&'a str>) -> Self {
        CsvRow {
            width: map.width,
            height: map.height,
            seed: map.seed,
            density,
            algo: &r.algo,
            heuristic: r.heuristic.map(Heuristic::name),
            iterations: r.iterations,
            expansions: r.expansions,
            cells_costed: Some(r.cells_costed),
            path_length: r.path_length,
            path_count: Some(r.path_count),
            elapsed_us: r.elapsed_us,
            error,
        }
    }
}

fn timed<T>(timing: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let out = f();
    let elapsed = timing.then(|| start.elapsed().as_micros() as u64);
    (out, elapsed)
}

fn run_one(
    map: &GridMap,
    algo: Algo,
    rule: CornerRule,
    opts: &CompareOptions,
) -> Result<AlgoRecord, SearchError> {
    let base = AlgoRecord {
        algo: algo.name().to_string(),
        heuristic: algo.heuristic(),
        iterations: None,
        expansions: None,
        cells_costed: 0,
        path_length: None,
        path_count: 0,
        elapsed_us: None,
    };
    match algo {
        Algo::Wavefront => {
            let ((outcome, paths), elapsed) = timed(opts.timing, || {
                let outcome = flood(map, rule, true);
                let paths = backtrack(
                    &outcome.field,
                    map,
                    rule,
                    BacktrackMode::All,
                    opts.max_paths,
                );
                (outcome, paths)
            });
            let paths = match paths {
                Ok(p) => Some(p),
                Err(SearchError::NoPath) => None,
                Err(e) => return Err(e),
            };
            Ok(AlgoRecord {
                iterations: Some(outcome.iterations_run),
                cells_costed: outcome.field.finite_count(),
                path_length: paths.as_ref().and_then(|p| p.first()).map(|p| p.len()),
                path_count: paths.map_or(0, |p| p.len()),
                elapsed_us: elapsed,
                ..base
            })
        }
        Algo::Dijkstra | Algo::AStar(_) => {
            let (result, elapsed) = timed(opts.timing, || match algo {
                Algo::AStar(h) => astar(map, rule, h),
                _ => dijkstra(map, rule),
            });
            let result = result?;
            Ok(AlgoRecord {
                expansions: Some(result.expansions),
                cells_costed: result.visited.len(),
                path_length: result.path_len(),
                path_count: usize::from(result.path.is_some()),
                elapsed_us: elapsed,
                ..base
            })
        }
    }
}

/// Runs each selected algorithm once on `map`. Unreachable destinations show
/// up as records without a path; only a missing destination is an error.
pub fn compare(
    map: &GridMap,
    algos: &[Algo],
    rule: CornerRule,
    opts: &CompareOptions,
) -> Result<ComparisonReport, SearchError> {
    if map.destination().is_none() {
        return Err(SearchError::NoDestination);
    }
    let results = algos
        .iter()
        .map(|&a| run_one(map, a, rule, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let report = ComparisonReport {
        map: MapInfo {
            width: map.width(),
            height: map.height(),
            seed: opts.seed,
            nodes_total: map.traversable_count(),
            obstacles: map.obstacle_count(),
        },
        results,
    };
    debug_assert!(
        report.lengths_consistent(),
        "inconsistent lengths: {report:?}"
    );
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub spec: GenSpec,
    pub report: Option<ComparisonReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub median: f64,
}

impl Summary {
    fn of(mut values: Vec<f64>) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let median = if n % 2 == 1 {
            values[n / 2]
        } else {
            (values[n / 2 - 1] + values[n / 2]) / 2.0
        };
        Some(Summary { mean, median })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoAggregate {
    pub algo: String,
    pub heuristic: Option<Heuristic>,
    pub runs: usize,
    pub solved: usize,
    pub iterations: Option<Summary>,
    pub expansions: Option<Summary>,
    pub cells_costed: Option<Summary>,
    pub path_length: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
    pub aggregate: Vec<AlgoAggregate>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("suite serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            match (&e.report, &e.error) {
                (Some(report), _) => {
                    for r in &report.results {
                        w.serialize(CsvRow::new(&report.map, Some(e.spec.density), r, None))
                            .expect("csv row");
                    }
                }
                (None, error) => {
                    w.serialize(CsvRow {
                        width: e.spec.width,
                        height: e.spec.height,
                        seed: Some(e.spec.seed),
                        density: Some(e.spec.density),
                        algo: "",
                        heuristic: None,
                        iterations: None,
                        expansions: None,
                        cells_costed: None,
                        path_length: None,
                        path_count: None,
                        elapsed_us: None,
                        error: error.as_deref(),
                    })
                    .expect("csv row");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
    }
}

fn aggregate(entries: &[SuiteEntry], algos: &[Algo]) -> Vec<AlgoAggregate> {
    algos
        .iter()
        .map(|&algo| {
            let records: Vec<&AlgoRecord> = entries
                .iter()
                .filter_map(|e| e.report.as_ref()?.record(algo))
                .collect();
            let solved: Vec<&&AlgoRecord> =
                records.iter().filter(|r| r.path_length.is_some()).collect();
            let pick = |f: &dyn Fn(&AlgoRecord) -> Option<f64>| {
                Summary::of(solved.iter().filter_map(|r| f(r)).collect())
            };
            AlgoAggregate {
                algo: algo.name().to_string(),
                heuristic: algo.heuristic(),
                runs: records.len(),
                solved: solved.len(),
                iterations: pick(&|r| r.iterations.map(f64::from)),
                expansions: pick(&|r| r.expansions.map(|e| e as f64)),
                cells_costed: pick(&|r| Some(r.cells_costed as f64)),
                path_length: pick(&|r| r.path_length.map(|l| l as f64)),
            }
        })
        .collect()
}

/// Generates and compares every spec. Entries run in parallel but come back
/// in spec order.
pub fn run_suite(
    specs: &[GenSpec],
    algos: &[Algo],
    rule: CornerRule,
    opts: &CompareOptions,
) -> SuiteReport {
    let entries: Vec<SuiteEntry> = specs
        .par_iter()
        .map(|spec| {
            let outcome = generate_map(spec)
                .map_err(|e| e.to_string())
                .and_then(|map| {
                    let opts = CompareOptions {
                        seed: Some(spec.seed),
                        ..*opts
                    };
                    compare(&map, algos, rule, &opts).map_err(|e| e.to_string())
                });
            let (report, error) = match outcome {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e)),
            };
            SuiteEntry {
                spec: *spec,
                report,
                error,
            }
        })
        .collect();
    let aggregate = aggregate(&entries, algos);
    SuiteReport { entries, aggregate }
}
