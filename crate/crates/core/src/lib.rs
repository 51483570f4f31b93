//! Shortest paths on 8-connected grids by wavefront expansion and backtracking.
//!
//! A wave spreads from the source one ring of neighbors per iteration and
//! writes the iteration number into each cell it reaches first, so the cost
//! field is the exact 8-connected step distance from the source. Walking back
//! from the destination through neighbors whose cost is one lower recovers
//! every shortest path.
//!
//! ```
//! use wavegrid::{backtrack, flood, parse_map, BacktrackMode, CornerRule};
//!
//! let map = parse_map("#####\n#S.D#\n#...#\n#####\n").unwrap();
//! let outcome = flood(&map, CornerRule::Allow, true);
//! assert_eq!(outcome.iterations_run, 2);
//! let paths = backtrack(&outcome.field, &map, CornerRule::Allow, BacktrackMode::All, 64).unwrap();
//! assert_eq!(paths.len(), 2);
//! ```
//!
//! Dijkstra, A* and a breadth-first distance oracle live in [`baselines`];
//! seeded map generation and comparison reports in [`metrics`].

pub mod backtrack;
pub mod baselines;
mod error;
pub mod fixtures;
pub mod grid;
pub mod metrics;
pub mod render;
pub mod wavefront;

pub use backtrack::{
    backtrack, descend_candidates, BacktrackMode, Path, PathSet, DEFAULT_MAX_PATHS,
};
pub use baselines::{astar, bfs8_distance_field, dijkstra, Heuristic, SearchAlgo, SearchResult};
pub use error::SearchError;
pub use grid::{
    neighbors8, parse_map, render_map, CellKind, Coord, CornerRule, GridMap, ParseError,
};
pub use metrics::{
    compare, generate_map, run_suite, Algo, AlgoRecord, CompareOptions, ComparisonReport,
    ComplexityCounters, GenError, GenSpec, SuiteReport,
};
pub use render::{render_path, render_trace, Frame, FrameSequence, RenderError, Style};
pub use wavefront::{
    flood, full_flood_component, ring_cells, Cost, CostField, FloodOutcome, FloodTrace, TraceStep,
};
