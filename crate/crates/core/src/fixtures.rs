//! Small maps shipped with the crate, used by tests, benches and docs.

use crate::grid::{parse_map, GridMap};

/// Open 3x3 interior, destination two diagonal steps from the source.
pub const M1: &str = include_str!("../fixtures/m1.map");
/// Two-cell wall between source and destination.
pub const M2: &str = include_str!("../fixtures/m2.map");
/// Two tied shortest paths.
pub const M3: &str = include_str!("../fixtures/m3.map");
/// Destination sealed off by a full-height wall.
pub const M4: &str = include_str!("../fixtures/m4.map");
/// A concave obstacle pocket opening toward the source, with the destination
/// behind it.
pub const POCKET: &str = include_str!("../fixtures/pocket.map");
/// A map on which A* with the straight-line heuristic returns a path longer
/// than the optimum under unit diagonal cost.
pub const EUCLID_DETOUR: &str = include_str!("../fixtures/euclid_detour.map");

/// Every checked-in fixture, by name.
pub const ALL: [(&str, &str); 6] = [
    ("m1", M1),
    ("m2", M2),
    ("m3", M3),
    ("m4", M4),
    ("pocket", POCKET),
    ("euclid_detour", EUCLID_DETOUR),
];

fn load(text: &str) -> GridMap {
    parse_map(text).expect("fixture parses")
}

pub fn m1() -> GridMap {
    load(M1)
}

pub fn m2() -> GridMap {
    load(M2)
}

pub fn m3() -> GridMap {
    load(M3)
}

pub fn m4() -> GridMap {
    load(M4)
}

pub fn pocket() -> GridMap {
    load(POCKET)
}

pub fn euclid_detour() -> GridMap {
    load(EUCLID_DETOUR)
}
