use thiserror::Error;

use crate::grid::Coord;

/// Failures shared by path recovery and the baseline searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("map has no destination")]
    NoDestination,
    #[error("destination is not reachable from the source")]
    NoPath,
    /// The cost field has no usable cost where one is required: either it was
    /// never flooded, it belongs to another map, or `at` is an obstacle.
    #[error("no finite cost usable for descent at {at}")]
    MissingCost { at: Coord },
    #[error("cost field is {field_width}x{field_height} but map is {map_width}x{map_height}")]
    DimensionMismatch {
        field_width: usize,
        field_height: usize,
        map_width: usize,
        map_height: usize,
    },
}
