//! Shared inputs for the solver benchmarks.

use wavegrid::{fixtures, generate_map, GenSpec, GridMap};

/// Named maps covering the small fixtures and a few generated sizes.
pub fn bench_maps() -> Vec<(String, GridMap)> {
    let mut maps = vec![("pocket".to_string(), fixtures::pocket())];
    for side in [32, 64, 128] {
        let spec = GenSpec::new(side, side, 0.2, 7).solvable();
        let map = generate_map(&spec).expect("benchmark map generates");
        maps.push((format!("gen{side}"), map));
    }
    maps
}
