//! Level-synchronous wavefront expansion over an 8-connected grid.
//!
//! Iteration `k` costs every still-unreached traversable cell that is an
//! admissible neighbor of a cell costed `k - 1`. A cell is written once; the
//! first write wins. Obstacles the wave touches are costed [`Cost::Infinite`]
//! and boundary cells are never costed.
//!
//! Cells costed next to an obstacle that the same iteration inspected are
//! recorded as *new sources* in the trace. Under simultaneous first-write
//! expansion a wave launched from such a cell is indistinguishable from the
//! main wave, so new sources are trace metadata only and never change costs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid::{CellKind, Coord, CornerRule, GridMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Cost {
    #[default]
    Unreached,
    Finite(u32),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<u32> {
        match self {
            Cost::Finite(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Unreached => f.write_str("."),
            Cost::Finite(k) => write!(f, "{k}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

/// Per-cell costs, row-major, same shape as the map they were computed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostField {
    width: usize,
    height: usize,
    costs: Vec<Cost>,
}

impl CostField {
    pub fn new(width: usize, height: usize) -> Self {
        CostField {
            width,
            height,
            costs: vec![Cost::Unreached; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    pub fn matches(&self, map: &GridMap) -> bool {
        self.width == map.width() && self.height == map.height()
    }

    /// Cost at `at`; off-field positions read as unreached.
    pub fn get(&self, at: Coord) -> Cost {
        if at.row < self.height && at.col < self.width {
            self.costs[at.row * self.width + at.col]
        } else {
            Cost::Unreached
        }
    }

    pub fn set(&mut self, at: Coord, cost: Cost) {
        self.costs[at.row * self.width + at.col] = cost;
    }

    pub fn finite_count(&self) -> usize {
        self.costs.iter().filter(|c| c.is_finite()).count()
    }

    pub fn max_finite(&self) -> Option<u32> {
        self.costs.iter().filter_map(|c| c.finite()).max()
    }

    /// Coordinates holding a finite cost, row-major.
    pub fn finite_cells(&self) -> Vec<Coord> {
        self.costs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_finite())
            .map(|(i, _)| Coord::new(i / self.width, i % self.width))
            .collect()
    }
}

/// Cells first costed in one iteration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub k: u32,
    pub costed: Vec<Coord>,
    pub new_sources: Vec<Coord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloodTrace {
    pub width: usize,
    pub height: usize,
    pub iterations: Vec<TraceStep>,
}

impl FloodTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloodOutcome {
    pub field: CostField,
    pub trace: FloodTrace,
    pub reached_destination: bool,
    pub iterations_run: u32,
}

/// In-bounds cells of the square ring at Chebyshev radius `k` around
/// `center`: top row left to right, right column top to bottom, bottom row
/// left to right, left column top to bottom. Corners appear once.
pub fn ring_cells(center: Coord, k: usize, map: &GridMap) -> Vec<Coord> {
    if k == 0 {
        return vec![center];
    }
    let (r, c, k) = (center.row as isize, center.col as isize, k as isize);
    let mut ring = Vec::with_capacity(8 * k as usize);
    let mut push = |row: isize, col: isize| {
        if row >= 0 && col >= 0 {
            let at = Coord::new(row as usize, col as usize);
            if map.in_bounds(at) {
                ring.push(at);
            }
        }
    };
    for col in c - k..=c + k {
        push(r - k, col);
    }
    for row in r - k + 1..r + k {
        push(row, c + k);
    }
    for col in c - k..=c + k {
        push(r + k, col);
    }
    for row in r - k + 1..r + k {
        push(row, c - k);
    }
    ring
}

/// Cells beside `at` along the side of the ring (centered on `center`) that
/// `at` lies on. Corner cells sit on two sides and get both pairs.
fn ring_lateral(center: Coord, at: Coord) -> impl Iterator<Item = Coord> {
    let d = center.chebyshev(at);
    let on_row_side = at.row.abs_diff(center.row) == d;
    let on_col_side = at.col.abs_diff(center.col) == d;
    let mut out = Vec::with_capacity(4);
    if on_row_side {
        if let Some(col) = at.col.checked_sub(1) {
            out.push(Coord::new(at.row, col));
        }
        out.push(Coord::new(at.row, at.col + 1));
    }
    if on_col_side {
        if let Some(row) = at.row.checked_sub(1) {
            out.push(Coord::new(row, at.col));
        }
        out.push(Coord::new(at.row + 1, at.col));
    }
    out.into_iter()
}

/// Expands from the map's source until the destination is costed (when
/// `stop_at_destination` is set and a destination exists) or an iteration
/// costs nothing new.
pub fn flood(map: &GridMap, rule: CornerRule, stop_at_destination: bool) -> FloodOutcome {
    let source = map.source();
    let destination = map.destination();
    let mut field = CostField::new(map.width(), map.height());
    field.set(source, Cost::Finite(0));

    // iteration at which an obstacle was first inspected; 0 = never
    let mut inspected_at = vec![0u32; map.len()];
    let mut steps = Vec::new();
    let mut frontier = vec![source];
    let mut k = 0u32;

    loop {
        let reached = destination.is_some_and(|d| field.get(d).is_finite());
        if stop_at_destination && reached {
            break;
        }
        let level = k + 1;
        let mut costed = Vec::new();
        for &cell in &frontier {
            for near in map.surrounding(cell) {
                if map.kind(near) == CellKind::Obstacle && field.get(near) == Cost::Unreached {
                    field.set(near, Cost::Infinite);
                    inspected_at[map.index(near)] = level;
                }
            }
            for next in map.neighbors8(cell, rule) {
                if field.get(next) == Cost::Unreached {
                    field.set(next, Cost::Finite(level));
                    costed.push(next);
                }
            }
        }
        if costed.is_empty() {
            break;
        }
        costed.sort_unstable();
        let new_sources = costed
            .iter()
            .copied()
            .filter(|&c| {
                ring_lateral(source, c)
                    .any(|n| map.in_bounds(n) && inspected_at[map.index(n)] == level)
            })
            .collect();
        steps.push(TraceStep {
            k: level,
            costed: costed.clone(),
            new_sources,
        });
        frontier = costed;
        k = level;
    }

    let reached_destination = destination.is_some_and(|d| field.get(d).is_finite());
    FloodOutcome {
        field,
        trace: FloodTrace {
            width: map.width(),
            height: map.height(),
            iterations: steps,
        },
        reached_destination,
        iterations_run: k,
    }
}

/// Floods the whole connected component of the source.
pub fn full_flood_component(map: &GridMap, rule: CornerRule) -> FloodOutcome {
    flood(map, rule, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{m1, m2, m4};
    use crate::grid::parse_map;

    fn c(row: usize, col: usize) -> Coord {
        Coord::new(row, col)
    }

    #[test]
    fn ring_zero_is_center() {
        let m = m1();
        assert_eq!(ring_cells(c(3, 2), 0, &m), vec![c(3, 2)]);
    }

    #[test]
    fn ring_one_is_eight_neighbors() {
        let m = m1();
        let mut ring = ring_cells(c(2, 2), 1, &m);
        assert_eq!(
            ring,
            vec![
                c(1, 1),
                c(1, 2),
                c(1, 3),
                c(2, 3),
                c(3, 1),
                c(3, 2),
                c(3, 3),
                c(2, 1)
            ]
        );
        ring.sort();
        let mut expected: Vec<_> = m.surrounding(c(2, 2)).collect();
        expected.sort();
        assert_eq!(ring, expected);
    }

    #[test]
    fn ring_two_on_m1_is_the_border() {
        let m = m1();
        let mut ring = ring_cells(c(2, 2), 2, &m);
        assert_eq!(ring.len(), 16);
        ring.sort();
        let mut border: Vec<_> = m
            .coords()
            .filter(|p| p.row == 0 || p.row == 4 || p.col == 0 || p.col == 4)
            .collect();
        border.sort();
        assert_eq!(ring, border);
    }

    #[test]
    fn ring_clips_at_corner() {
        let m = m1();
        // radius 1 around (0,0) keeps only the three in-bounds cells
        assert_eq!(ring_cells(c(0, 0), 1, &m), vec![c(0, 1), c(1, 0), c(1, 1)]);
    }

    #[test]
    fn m1_first_iteration() {
        let out = flood(&m1(), CornerRule::Allow, true);
        let first = &out.trace.iterations[0];
        assert_eq!(first.k, 1);
        assert_eq!(first.costed, vec![c(1, 2), c(2, 1), c(2, 2)]);
        for p in &first.costed {
            assert_eq!(out.field.get(*p), Cost::Finite(1));
        }
    }

    #[test]
    fn m1_full_flood() {
        let out = full_flood_component(&m1(), CornerRule::Allow);
        assert_eq!(out.iterations_run, 2);
        assert_eq!(out.field.finite_count(), 9);
        assert_eq!(out.field.max_finite(), Some(2));
        assert!(out.reached_destination);
        // boundary is never costed
        assert_eq!(out.field.get(c(0, 0)), Cost::Unreached);
    }

    #[test]
    fn m2_costs_around_the_wall() {
        let out = flood(&m2(), CornerRule::Allow, true);
        assert!(out.reached_destination);
        assert_eq!(out.field.get(c(1, 5)), Cost::Finite(4));
        assert_eq!(out.field.get(c(1, 3)), Cost::Infinite);
        assert_eq!(out.field.get(c(2, 3)), Cost::Infinite);
        assert_eq!(out.iterations_run, 4);
    }

    #[test]
    fn m2_marks_new_source_past_the_wall() {
        let out = flood(&m2(), CornerRule::Allow, true);
        let second = &out.trace.iterations[1];
        assert_eq!(second.k, 2);
        assert!(second.new_sources.contains(&c(3, 3)));
        for step in &out.trace.iterations {
            assert!(step.new_sources.iter().all(|n| step.costed.contains(n)));
        }
    }

    #[test]
    fn m4_stops_at_the_wall() {
        let out = flood(&m4(), CornerRule::Allow, true);
        assert!(!out.reached_destination);
        assert_eq!(out.field.finite_cells(), vec![c(1, 1), c(2, 1), c(3, 1)]);
        assert_eq!(out.field.get(c(1, 3)), Cost::Unreached);
    }

    #[test]
    fn walled_single_cell() {
        let m = parse_map("###\n#S#\n###\n").unwrap();
        let out = full_flood_component(&m, CornerRule::Allow);
        assert_eq!(out.iterations_run, 0);
        assert!(out.trace.iterations.is_empty());
        assert_eq!(out.field.finite_cells(), vec![c(1, 1)]);
        assert!(!out.reached_destination);
    }

    #[test]
    fn stop_flag_ignored_without_destination() {
        let m = parse_map("S...\n....\n").unwrap();
        let out = flood(&m, CornerRule::Allow, true);
        assert_eq!(out.iterations_run, 3);
        assert_eq!(out.field.finite_count(), 8);
    }

    #[test]
    fn trace_json_shape() {
        let out = flood(&m1(), CornerRule::Allow, true);
        let json: serde_json::Value = serde_json::from_str(&out.trace.to_json()).unwrap();
        assert_eq!(json["width"], 5);
        assert_eq!(json["height"], 5);
        assert_eq!(json["iterations"][0]["k"], 1);
        assert_eq!(
            json["iterations"][0]["costed"][0],
            serde_json::json!([1, 2])
        );
        let back: FloodTrace = serde_json::from_str(&out.trace.to_json()).unwrap();
        assert_eq!(back, out.trace);
    }
}
