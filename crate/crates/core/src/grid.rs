//! Grid maps, coordinates, cell kinds and the ASCII map format.
//!
//! Map text uses one character per cell:
//!
//! | glyph | kind        |
//! |-------|-------------|
//! | `#`   | boundary    |
//! | `@`   | obstacle    |
//! | `.`   | passable    |
//! | `S`   | source      |
//! | `D`   | destination |
//!
//! Rows run top to bottom. Positions outside the rectangle behave as boundary,
//! so a map does not need an explicit `#` frame.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Zero-based cell position. Serialized as a `[row, col]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub const fn new(row: usize, col: usize) -> Self {
        Coord { row, col }
    }

    /// Number of 8-connected unit steps between two cells on an open grid.
    pub fn chebyshev(self, other: Coord) -> usize {
        self.row
            .abs_diff(other.row)
            .max(self.col.abs_diff(other.col))
    }

    pub fn euclidean(self, other: Coord) -> f64 {
        let dr = self.row.abs_diff(other.row) as f64;
        let dc = self.col.abs_diff(other.col) as f64;
        (dr * dr + dc * dc).sqrt()
    }

    fn offset(self, dr: isize, dc: isize) -> Option<Coord> {
        Some(Coord {
            row: self.row.checked_add_signed(dr)?,
            col: self.col.checked_add_signed(dc)?,
        })
    }
}

impl From<[usize; 2]> for Coord {
    fn from([row, col]: [usize; 2]) -> Self {
        Coord { row, col }
    }
}

impl From<Coord> for [usize; 2] {
    fn from(c: Coord) -> Self {
        [c.row, c.col]
    }
}

impl From<(usize, usize)> for Coord {
    fn from((row, col): (usize, usize)) -> Self {
        Coord { row, col }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Boundary,
    Obstacle,
    Passable,
    Source,
    Destination,
}

impl CellKind {
    pub fn from_glyph(ch: char) -> Option<CellKind> {
        Some(match ch {
            '#' => CellKind::Boundary,
            '@' => CellKind::Obstacle,
            '.' => CellKind::Passable,
            'S' => CellKind::Source,
            'D' => CellKind::Destination,
            _ => return None,
        })
    }

    pub fn glyph(self) -> char {
        match self {
            CellKind::Boundary => '#',
            CellKind::Obstacle => '@',
            CellKind::Passable => '.',
            CellKind::Source => 'S',
            CellKind::Destination => 'D',
        }
    }

    /// Source and destination count as passable for movement.
    pub fn is_traversable(self) -> bool {
        matches!(
            self,
            CellKind::Passable | CellKind::Source | CellKind::Destination
        )
    }

    /// Obstacle or boundary.
    pub fn is_blocking(self) -> bool {
        !self.is_traversable()
    }
}

/// Whether a diagonal step may squeeze between two blocked orthogonal cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CornerRule {
    #[default]
    Allow,
    Forbid,
}

impl CornerRule {
    pub const ALL: [CornerRule; 2] = [CornerRule::Allow, CornerRule::Forbid];

    pub fn name(self) -> &'static str {
        match self {
            CornerRule::Allow => "allow",
            CornerRule::Forbid => "forbid",
        }
    }
}

/// Neighbor offsets, clockwise starting from "up".
pub const DIRECTIONS_8: [(isize, isize); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("map text is empty")]
    Empty,
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown symbol {symbol:?} at row {row}, col {col}")]
    UnknownSymbol {
        row: usize,
        col: usize,
        symbol: char,
    },
    #[error("map has no source cell `S`")]
    NoSource,
    #[error("map has more than one source: {first} and {second}")]
    MultipleSources { first: Coord, second: Coord },
    #[error("map has more than one destination: {first} and {second}")]
    MultipleDestinations { first: Coord, second: Coord },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridMap {
    width: usize,
    height: usize,
    cells: Vec<CellKind>,
    source: Coord,
    destination: Option<Coord>,
}

impl GridMap {
    /// Builds a map from row-major cells, validating the source and
    /// destination counts the same way the parser does.
    pub fn from_cells(
        width: usize,
        height: usize,
        cells: Vec<CellKind>,
    ) -> Result<GridMap, ParseError> {
        if width == 0 || height == 0 {
            return Err(ParseError::Empty);
        }
        assert_eq!(
            cells.len(),
            width * height,
            "cell count must be width * height"
        );
        let mut source = None;
        let mut destination = None;
        for (i, &kind) in cells.iter().enumerate() {
            let at = Coord::new(i / width, i % width);
            match kind {
                CellKind::Source => {
                    if let Some(first) = source {
                        return Err(ParseError::MultipleSources { first, second: at });
                    }
                    source = Some(at);
                }
                CellKind::Destination => {
                    if let Some(first) = destination {
                        return Err(ParseError::MultipleDestinations { first, second: at });
                    }
                    destination = Some(at);
                }
                _ => {}
            }
        }
        let source = source.ok_or(ParseError::NoSource)?;
        Ok(GridMap {
            width,
            height,
            cells,
            source,
            destination,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn source(&self) -> Coord {
        self.source
    }

    pub fn destination(&self) -> Option<Coord> {
        self.destination
    }

    pub fn cells(&self) -> &[CellKind] {
        &self.cells
    }

    pub fn in_bounds(&self, at: Coord) -> bool {
        at.row < self.height && at.col < self.width
    }

    pub fn index(&self, at: Coord) -> usize {
        debug_assert!(self.in_bounds(at));
        at.row * self.width + at.col
    }

    pub fn coord(&self, index: usize) -> Coord {
        Coord::new(index / self.width, index % self.width)
    }

    /// Kind at `at`; anything off the map reads as boundary.
    pub fn kind(&self, at: Coord) -> CellKind {
        if self.in_bounds(at) {
            self.cells[self.index(at)]
        } else {
            CellKind::Boundary
        }
    }

    fn kind_at_offset(&self, at: Coord, dr: isize, dc: isize) -> CellKind {
        at.offset(dr, dc)
            .map_or(CellKind::Boundary, |c| self.kind(c))
    }

    pub fn is_traversable(&self, at: Coord) -> bool {
        self.kind(at).is_traversable()
    }

    pub fn traversable_count(&self) -> usize {
        self.cells.iter().filter(|k| k.is_traversable()).count()
    }

    pub fn obstacle_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|&&k| k == CellKind::Obstacle)
            .count()
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.cells.len()).map(move |i| self.coord(i))
    }

    /// Whether a single step from `from` by `(dr, dc)` lands on a traversable
    /// cell that the corner rule permits.
    pub fn step_allowed(
        &self,
        from: Coord,
        dr: isize,
        dc: isize,
        rule: CornerRule,
    ) -> Option<Coord> {
        let to = from.offset(dr, dc).filter(|&c| self.in_bounds(c))?;
        if !self.is_traversable(to) {
            return None;
        }
        if rule == CornerRule::Forbid
            && dr != 0
            && dc != 0
            && self.kind_at_offset(from, dr, 0).is_blocking()
            && self.kind_at_offset(from, 0, dc).is_blocking()
        {
            return None;
        }
        Some(to)
    }

    /// Traversable 8-neighbors of `at` in clockwise-from-up order.
    pub fn neighbors8(&self, at: Coord, rule: CornerRule) -> Vec<Coord> {
        DIRECTIONS_8
            .iter()
            .filter_map(|&(dr, dc)| self.step_allowed(at, dr, dc, rule))
            .collect()
    }

    /// In-bounds cells in the 8-neighborhood of `at`, whatever their kind.
    pub fn surrounding(&self, at: Coord) -> impl Iterator<Item = Coord> + '_ {
        DIRECTIONS_8
            .iter()
            .filter_map(move |&(dr, dc)| at.offset(dr, dc))
            .filter(|&c| self.in_bounds(c))
    }

    /// Copy of this map with `at` replaced by `kind`. Source and destination
    /// bookkeeping is revalidated.
    pub fn with_cell(&self, at: Coord, kind: CellKind) -> Result<GridMap, ParseError> {
        let mut cells = self.cells.clone();
        cells[self.index(at)] = kind;
        GridMap::from_cells(self.width, self.height, cells)
    }

    /// Renders the map back to its text form, one `\n`-terminated line per row.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in self.cells.chunks(self.width) {
            out.extend(row.iter().map(|k| k.glyph()));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GridMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for GridMap {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_map(s)
    }
}

/// Parses map text. Accepts `\n` or `\r\n` line endings and one optional
/// trailing line terminator.
pub fn parse_map(text: &str) -> Result<GridMap, ParseError> {
    let body = text
        .strip_suffix('\n')
        .map(|s| s.strip_suffix('\r').unwrap_or(s))
        .unwrap_or(text);
    if body.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut width = None;
    let mut cells = Vec::new();
    let mut height = 0;
    for (row, line) in body.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let mut len = 0;
        for (col, ch) in line.chars().enumerate() {
            let kind = CellKind::from_glyph(ch).ok_or(ParseError::UnknownSymbol {
                row,
                col,
                symbol: ch,
            })?;
            cells.push(kind);
            len += 1;
        }
        match width {
            None => width = Some(len),
            Some(expected) if expected != len => {
                return Err(ParseError::RaggedRows {
                    row,
                    expected,
                    found: len,
                })
            }
            Some(_) => {}
        }
        height += 1;
    }
    let width = width.unwrap_or(0);
    if width == 0 {
        return Err(ParseError::Empty);
    }
    GridMap::from_cells(width, height, cells)
}

/// Inverse of [`parse_map`].
pub fn render_map(map: &GridMap) -> String {
    map.render()
}

/// Free-function form of [`GridMap::neighbors8`].
pub fn neighbors8(map: &GridMap, at: Coord, rule: CornerRule) -> Vec<Coord> {
    map.neighbors8(at, rule)
}
