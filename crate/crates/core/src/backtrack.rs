//! Shortest-path recovery by descending a flooded cost field.
//!
//! From the destination, each step moves to an admissible neighbor whose cost
//! is exactly one lower, until the source (cost 0) is reached. Because costs
//! drop by one per step, every descent terminates after `cost(destination)`
//! steps and no visited set is needed. When several neighbors qualify the
//! descent branches, and each branch yields its own path.

use serde::{Deserialize, Serialize};

use crate::error::SearchError;
use crate::grid::{Coord, CornerRule, GridMap};
use crate::wavefront::{Cost, CostField};

/// Default cap on the number of enumerated paths.
pub const DEFAULT_MAX_PATHS: usize = 64;

/// Cells from source to destination; consecutive cells are 8-adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PathJson", try_from = "PathJson")]
pub struct Path {
    cells: Vec<Coord>,
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    length: usize,
    cells: Vec<Coord>,
}

impl From<Path> for PathJson {
    fn from(p: Path) -> Self {
        PathJson {
            length: p.len(),
            cells: p.cells,
        }
    }
}

impl TryFrom<PathJson> for Path {
    type Error = String;

    fn try_from(j: PathJson) -> Result<Self, Self::Error> {
        if j.cells.is_empty() || j.cells.len() - 1 != j.length {
            return Err(format!(
                "path length {} does not match {} cells",
                j.length,
                j.cells.len()
            ));
        }
        Ok(Path { cells: j.cells })
    }
}

impl Path {
    /// # Panics
    /// If `cells` is empty.
    pub fn new(cells: Vec<Coord>) -> Self {
        assert!(!cells.is_empty(), "a path has at least one cell");
        Path { cells }
    }

    pub fn cells(&self) -> &[Coord] {
        &self.cells
    }

    /// Number of steps, one less than the number of cells.
    pub fn len(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> Coord {
        self.cells[0]
    }

    pub fn last(&self) -> Coord {
        self.cells[self.cells.len() - 1]
    }

    /// Whether each step is an admissible move on `map` under `rule`.
    pub fn is_connected(&self, map: &GridMap, rule: CornerRule) -> bool {
        self.cells
            .windows(2)
            .all(|w| map.neighbors8(w[0], rule).contains(&w[1]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "PathSetJson", from = "PathSetJson")]
pub struct PathSet {
    pub paths: Vec<Path>,
    /// Set when more paths existed than the cap allowed.
    pub truncated: bool,
}

#[derive(Serialize, Deserialize)]
struct PathSetJson {
    count: usize,
    truncated: bool,
    paths: Vec<Path>,
}

impl From<PathSet> for PathSetJson {
    fn from(s: PathSet) -> Self {
        PathSetJson {
            count: s.paths.len(),
            truncated: s.truncated,
            paths: s.paths,
        }
    }
}

impl From<PathSetJson> for PathSet {
    fn from(j: PathSetJson) -> Self {
        PathSet {
            paths: j.paths,
            truncated: j.truncated,
        }
    }
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn first(&self) -> Option<&Path> {
        self.paths.first()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BacktrackMode {
    /// One path, always taking the first candidate in neighbor order.
    #[default]
    First,
    /// Every distinct descent, depth-first in neighbor order, up to a cap.
    All,
}

fn check_shape(field: &CostField, map: &GridMap) -> Result<(), SearchError> {
    if field.matches(map) {
        Ok(())
    } else {
        Err(SearchError::DimensionMismatch {
            field_width: field.width(),
            field_height: field.height(),
            map_width: map.width(),
            map_height: map.height(),
        })
    }
}

/// Admissible neighbors of `at` costed exactly one less than `at`, in
/// clockwise-from-up order. Empty at cost 0.
pub fn descend_candidates(
    field: &CostField,
    map: &GridMap,
    at: Coord,
    rule: CornerRule,
) -> Result<Vec<Coord>, SearchError> {
    check_shape(field, map)?;
    let k = field
        .get(at)
        .finite()
        .ok_or(SearchError::MissingCost { at })?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let below = Cost::Finite(k - 1);
    let candidates: Vec<Coord> = map
        .neighbors8(at, rule)
        .into_iter()
        .filter(|&n| field.get(n) == below)
        .collect();
    // an exact distance field always has a parent one level down
    if candidates.is_empty() {
        return Err(SearchError::MissingCost { at });
    }
    Ok(candidates)
}

/// Recovers shortest paths from a flooded field. Paths are returned source
/// first.
pub fn backtrack(
    field: &CostField,
    map: &GridMap,
    rule: CornerRule,
    mode: BacktrackMode,
    max_paths: usize,
) -> Result<PathSet, SearchError> {
    check_shape(field, map)?;
    let destination = map.destination().ok_or(SearchError::NoDestination)?;
    match field.get(destination) {
        Cost::Unreached => return Err(SearchError::NoPath),
        Cost::Infinite => return Err(SearchError::MissingCost { at: destination }),
        Cost::Finite(_) => {}
    }
    let source = map.source();
    let cap = match mode {
        BacktrackMode::First => 1,
        BacktrackMode::All => max_paths.max(1),
    };

    let finish = |trail: &[Coord]| -> Result<Path, SearchError> {
        let end = *trail.last().expect("trail is never empty here");
        if end != source {
            return Err(SearchError::MissingCost { at: end });
        }
        Ok(Path::new(trail.iter().rev().copied().collect()))
    };

    let mut set = PathSet::default();
    let mut trail = vec![destination];
    if field.get(destination) == Cost::Finite(0) {
        set.paths.push(finish(&trail)?);
        return Ok(set);
    }

    // each frame holds the candidates of the matching trail cell
    let mut frames: Vec<(Vec<Coord>, usize)> =
        vec![(descend_candidates(field, map, destination, rule)?, 0)];
    while let Some((candidates, next)) = frames.last_mut() {
        let Some(&step) = candidates.get(*next) else {
            frames.pop();
            trail.pop();
            continue;
        };
        *next += 1;
        trail.push(step);
        if field.get(step) == Cost::Finite(0) {
            if set.paths.len() == cap {
                set.truncated = mode == BacktrackMode::All;
                break;
            }
            set.paths.push(finish(&trail)?);
            trail.pop();
            if mode == BacktrackMode::First {
                break;
            }
        } else {
            frames.push((descend_candidates(field, map, step, rule)?, 0));
        }
    }
    Ok(set)
}
