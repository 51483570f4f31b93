//! Reference searches: a plain breadth-first distance oracle, Dijkstra and A*.
//!
//! All three use unit step cost for orthogonal and diagonal moves alike, the
//! same cost model the wavefront uses. Under that model the straight-line
//! heuristic overestimates diagonal travel, so A* with [`Heuristic::Euclidean`]
//! can return a longer-than-optimal path. [`Heuristic::Chebyshev`] is exact on
//! open ground and keeps A* optimal.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::backtrack::Path;
use crate::error::SearchError;
use crate::grid::{CellKind, Coord, CornerRule, GridMap};
use crate::wavefront::{Cost, CostField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Heuristic {
    #[default]
    Chebyshev,
    Euclidean,
}

impl Heuristic {
    pub fn estimate(self, from: Coord, to: Coord) -> f64 {
        match self {
            Heuristic::Chebyshev => from.chebyshev(to) as f64,
            Heuristic::Euclidean => from.euclidean(to),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Chebyshev => "chebyshev",
            Heuristic::Euclidean => "euclidean",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchAlgo {
    Dijkstra,
    AStar(Heuristic),
}

impl SearchAlgo {
    pub fn name(self) -> &'static str {
        match self {
            SearchAlgo::Dijkstra => "dijkstra",
            SearchAlgo::AStar(_) => "astar",
        }
    }

    pub fn heuristic(self) -> Option<Heuristic> {
        match self {
            SearchAlgo::Dijkstra => None,
            SearchAlgo::AStar(h) => Some(h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub algo: SearchAlgo,
    /// `None` when the destination is unreachable.
    pub path: Option<Path>,
    /// Nodes popped and expanded.
    pub expansions: usize,
    /// Every cell that was given a tentative cost, row-major.
    pub visited: Vec<Coord>,
}

#[derive(Serialize)]
struct SearchResultJson<'a> {
    algo: &'static str,
    heuristic: Option<Heuristic>,
    expansions: usize,
    path: Option<&'a Path>,
}

impl Serialize for SearchResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SearchResultJson {
            algo: self.algo.name(),
            heuristic: self.algo.heuristic(),
            expansions: self.expansions,
            path: self.path.as_ref(),
        }
        .serialize(s)
    }
}

impl SearchResult {
    pub fn path_len(&self) -> Option<usize> {
        self.path.as_ref().map(Path::len)
    }

    /// The path, or [`SearchError::NoPath`].
    pub fn require_path(&self) -> Result<&Path, SearchError> {
        self.path.as_ref().ok_or(SearchError::NoPath)
    }
}

/// Breadth-first 8-connected distances from the source. Obstacles next to any
/// reached cell are marked infinite; everything else stays unreached.
pub fn bfs8_distance_field(map: &GridMap, rule: CornerRule) -> CostField {
    let mut field = CostField::new(map.width(), map.height());
    let mut queue = VecDeque::new();
    field.set(map.source(), Cost::Finite(0));
    queue.push_back((map.source(), 0u32));
    while let Some((at, d)) = queue.pop_front() {
        for near in map.surrounding(at) {
            if map.kind(near) == CellKind::Obstacle {
                field.set(near, Cost::Infinite);
            }
        }
        for next in map.neighbors8(at, rule) {
            if field.get(next) == Cost::Unreached {
                field.set(next, Cost::Finite(d + 1));
                queue.push_back((next, d + 1));
            }
        }
    }
    field
}

fn walk_parents(parents: &[Option<Coord>], map: &GridMap, goal: Coord) -> Path {
    let mut cells = vec![goal];
    let mut at = goal;
    while let Some(p) = parents[map.index(at)] {
        cells.push(p);
        at = p;
    }
    cells.reverse();
    Path::new(cells)
}

fn collect_visited(map: &GridMap, seen: &[bool]) -> Vec<Coord> {
    seen.iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| map.coord(i))
        .collect()
}

/// Unit-cost Dijkstra; ties settle in (cost, row, col) order.
pub fn dijkstra(map: &GridMap, rule: CornerRule) -> Result<SearchResult, SearchError> {
    let goal = map.destination().ok_or(SearchError::NoDestination)?;
    let n = map.len();
    let mut dist = vec![u32::MAX; n];
    let mut parents = vec![None; n];
    let mut settled = vec![false; n];
    let mut seen = vec![false; n];
    let mut heap = BinaryHeap::new();

    let start = map.source();
    dist[map.index(start)] = 0;
    seen[map.index(start)] = true;
    heap.push(Reverse((0u32, start.row, start.col)));

    let mut expansions = 0;
    let mut found = false;
    while let Some(Reverse((g, row, col))) = heap.pop() {
        let at = Coord::new(row, col);
        let i = map.index(at);
        if settled[i] {
            continue;
        }
        settled[i] = true;
        expansions += 1;
        if at == goal {
            found = true;
            break;
        }
        for next in map.neighbors8(at, rule) {
            let j = map.index(next);
            if !settled[j] && g + 1 < dist[j] {
                dist[j] = g + 1;
                parents[j] = Some(at);
                seen[j] = true;
                heap.push(Reverse((g + 1, next.row, next.col)));
            }
        }
    }

    Ok(SearchResult {
        algo: SearchAlgo::Dijkstra,
        path: found.then(|| walk_parents(&parents, map, goal)),
        expansions,
        visited: collect_visited(map, &seen),
    })
}

/// Open-list entry ordered so that `BinaryHeap` pops the smallest `f`, then
/// the largest `g`, then the smallest (row, col).
#[derive(Debug, Clone, Copy)]
struct Open {
    f: f64,
    g: u32,
    at: Coord,
}

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Open {}

impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Open {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then(self.g.cmp(&other.g))
            .then(other.at.cmp(&self.at))
    }
}

/// Best-first search on `f = g + h` with unit step cost. Closed nodes are
/// never reopened.
pub fn astar(map: &GridMap, rule: CornerRule, h: Heuristic) -> Result<SearchResult, SearchError> {
    let goal = map.destination().ok_or(SearchError::NoDestination)?;
    let n = map.len();
    let mut best_g = vec![u32::MAX; n];
    let mut parents = vec![None; n];
    let mut closed = vec![false; n];
    let mut seen = vec![false; n];
    let mut open = BinaryHeap::new();

    let start = map.source();
    best_g[map.index(start)] = 0;
    seen[map.index(start)] = true;
    open.push(Open {
        f: h.estimate(start, goal),
        g: 0,
        at: start,
    });

    let mut expansions = 0;
    let mut found = false;
    while let Some(Open { g, at, .. }) = open.pop() {
        let i = map.index(at);
        if closed[i] || g > best_g[i] {
            continue;
        }
        closed[i] = true;
        expansions += 1;
        if at == goal {
            found = true;
            break;
        }
        for next in map.neighbors8(at, rule) {
            let j = map.index(next);
            let ng = g + 1;
            if !closed[j] && ng < best_g[j] {
                best_g[j] = ng;
                parents[j] = Some(at);
                seen[j] = true;
                open.push(Open {
                    f: ng as f64 + h.estimate(next, goal),
                    g: ng,
                    at: next,
                });
            }
        }
    }

    Ok(SearchResult {
        algo: SearchAlgo::AStar(h),
        path: found.then(|| walk_parents(&parents, map, goal)),
        expansions,
        visited: collect_visited(map, &seen),
    })
}
