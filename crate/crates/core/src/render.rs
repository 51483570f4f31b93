//! ASCII snapshots of a flood, one frame per iteration.
//!
//! Glyphs in `marks` style:
//!
//! - `*` cell costed in the frame's own iteration (the advancing front)
//! - `o` cell costed in an earlier iteration
//! - `N` new source
//! - `S`, `D`, `#`, `@`, `.` as in the map
//!
//! In `costs` style every costed cell shows its cost; obstacles show `@` and
//! untouched cells keep their map glyph. When any cost has more than one
//! digit, cells are right-aligned to a common width and separated by a space.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backtrack::Path;
use crate::grid::{CellKind, Coord, GridMap};
use crate::wavefront::FloodTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Style {
    #[default]
    Marks,
    Costs,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("trace is {trace_width}x{trace_height} but map is {map_width}x{map_height}")]
    DimensionMismatch {
        trace_width: usize,
        trace_height: usize,
        map_width: usize,
        map_height: usize,
    },
    #[error("trace references {0}, outside the map")]
    OutOfBounds(Coord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub header: String,
    pub grid: Vec<String>,
    /// Cells costed in this iteration or before, source excluded.
    pub marked: Vec<Coord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FrameSequence {
    pub frames: Vec<Frame>,
}

impl fmt::Display for FrameSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, frame) in self.frames.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "{}", frame.header)?;
            for row in &frame.grid {
                writeln!(f, "{row}")?;
            }
        }
        Ok(())
    }
}

fn check(map: &GridMap, trace: &FloodTrace) -> Result<(), RenderError> {
    if trace.width != map.width() || trace.height != map.height() {
        return Err(RenderError::DimensionMismatch {
            trace_width: trace.width,
            trace_height: trace.height,
            map_width: map.width(),
            map_height: map.height(),
        });
    }
    for step in &trace.iterations {
        if let Some(&bad) = step
            .costed
            .iter()
            .chain(&step.new_sources)
            .find(|c| !map.in_bounds(**c))
        {
            return Err(RenderError::OutOfBounds(bad));
        }
    }
    Ok(())
}

/// Frame 0 is the map before any expansion; frame `k` shows everything costed
/// through iteration `k`.
pub fn render_trace(
    map: &GridMap,
    trace: &FloodTrace,
    style: Style,
) -> Result<FrameSequence, RenderError> {
    check(map, trace)?;
    let max_cost = trace.iterations.last().map_or(0, |s| s.k);
    let cell_width = max_cost.to_string().len();

    let mut cost_at: HashMap<Coord, u32> = HashMap::new();
    cost_at.insert(map.source(), 0);
    let mut new_sources = Vec::new();
    let mut marked = Vec::new();
    let mut frames = Vec::with_capacity(trace.iterations.len() + 1);

    let draw = |k: u32, cost_at: &HashMap<Coord, u32>, new_sources: &[Coord], marked: &[Coord]| {
        let grid = (0..map.height())
            .map(|row| {
                let cells: Vec<String> = (0..map.width())
                    .map(|col| {
                        let at = Coord::new(row, col);
                        let glyph = match style {
                            Style::Costs => cost_glyph(map, at, cost_at),
                            Style::Marks => {
                                mark_glyph(map, at, k, cost_at, new_sources).to_string()
                            }
                        };
                        format!("{glyph:>cell_width$}")
                    })
                    .collect();
                cells.join(if cell_width > 1 { " " } else { "" })
            })
            .collect();
        let header = if k == 0 {
            "iteration 0".to_string()
        } else {
            format!("iteration {k}")
        };
        Frame {
            header,
            grid,
            marked: marked.to_vec(),
        }
    };

    frames.push(draw(0, &cost_at, &new_sources, &marked));
    for step in &trace.iterations {
        for &c in &step.costed {
            cost_at.insert(c, step.k);
        }
        new_sources.extend(step.new_sources.iter().copied());
        marked.extend(step.costed.iter().copied());
        marked.sort_unstable();
        frames.push(draw(step.k, &cost_at, &new_sources, &marked));
    }
    Ok(FrameSequence { frames })
}

fn cost_glyph(map: &GridMap, at: Coord, cost_at: &HashMap<Coord, u32>) -> String {
    match cost_at.get(&at) {
        Some(k) => k.to_string(),
        None => map.kind(at).glyph().to_string(),
    }
}

fn mark_glyph(
    map: &GridMap,
    at: Coord,
    k: u32,
    cost_at: &HashMap<Coord, u32>,
    new_sources: &[Coord],
) -> char {
    let kind = map.kind(at);
    if matches!(kind, CellKind::Source | CellKind::Destination) {
        return kind.glyph();
    }
    match cost_at.get(&at) {
        Some(_) if new_sources.contains(&at) => 'N',
        Some(&c) if c == k => '*',
        Some(_) => 'o',
        None => kind.glyph(),
    }
}

/// The map with the cells of `path` between its endpoints drawn as `*`.
pub fn render_path(map: &GridMap, path: &Path) -> String {
    let mut rows: Vec<Vec<char>> = map.render().lines().map(|l| l.chars().collect()).collect();
    for &c in path.cells() {
        if map.kind(c) == CellKind::Passable {
            rows[c.row][c.col] = '*';
        }
    }
    rows.into_iter()
        .map(|r| r.into_iter().collect::<String>() + "\n")
        .collect()
}
