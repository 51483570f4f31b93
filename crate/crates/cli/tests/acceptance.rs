//! Exit criteria for the library and CLI. Run with
//! `cargo test -p wavegrid-cli --test acceptance -- --nocapture` to see one
//! PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use wavegrid::fixtures;
use wavegrid::{
    astar, backtrack, bfs8_distance_field, compare, dijkstra, flood, full_flood_component,
    generate_map, parse_map, run_suite, Algo, BacktrackMode, CellKind, CompareOptions, Coord,
    CornerRule, Cost, GenSpec, GridMap, Heuristic, SearchError,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const POCKET_WAVEFRONT_ITERATIONS: u32 = 23;
const POCKET_ASTAR_EUCLIDEAN_EXPANSIONS: usize = 174;

fn generated(seeds: std::ops::RangeInclusive<u64>) -> Vec<(u64, GridMap)> {
    seeds
        .map(|s| {
            (
                s,
                generate_map(&GenSpec::new(30, 30, 0.2, s)).expect("30x30 generates"),
            )
        })
        .collect()
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wavegrid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.map"))
        .to_string_lossy()
        .into_owned()
}

/// Every simple path of minimum length from S to D, by iterative deepening.
fn brute_force_shortest(map: &GridMap, rule: CornerRule) -> Option<BTreeSet<Vec<Coord>>> {
    let goal = map.destination()?;
    fn extend(
        map: &GridMap,
        rule: CornerRule,
        goal: Coord,
        limit: usize,
        trail: &mut Vec<Coord>,
        out: &mut BTreeSet<Vec<Coord>>,
    ) {
        let at = *trail.last().unwrap();
        let used = trail.len() - 1;
        if at == goal {
            if used == limit {
                out.insert(trail.clone());
            }
            return;
        }
        if used == limit {
            return;
        }
        for next in map.neighbors8(at, rule) {
            if !trail.contains(&next) {
                trail.push(next);
                extend(map, rule, goal, limit, trail, out);
                trail.pop();
            }
        }
    }
    (1..=map.traversable_count()).find_map(|limit| {
        let mut out = BTreeSet::new();
        extend(map, rule, goal, limit, &mut vec![map.source()], &mut out);
        (!out.is_empty()).then_some(out)
    })
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let maps = generated(1..=200);
    let mut compared = 0;
    for (seed, map) in &maps {
        for rule in CornerRule::ALL {
            let wave = full_flood_component(map, rule).field;
            let oracle = bfs8_distance_field(map, rule);
            for at in map.coords() {
                let (w, o) = (wave.get(at), oracle.get(at));
                ensure!(
                    w.finite() == o.finite(),
                    "seed {seed} {}: {at} wavefront {w} vs oracle {o}",
                    rule.name()
                );
            }
            ensure!(wave == oracle, "seed {seed}: obstacle marks differ");
            compared += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!(
        "{compared} map/rule pairs identical in {elapsed:.2?}"
    ))
}

fn c2_optimality() -> Outcome {
    let mut solvable = 0;
    for (seed, map) in generated(1..=200) {
        for rule in CornerRule::ALL {
            let dest = map.destination().unwrap();
            let Some(oracle) = bfs8_distance_field(&map, rule).get(dest).finite() else {
                continue;
            };
            solvable += 1;
            let out = flood(&map, rule, true);
            ensure!(
                out.iterations_run == oracle,
                "seed {seed}: iterations {} vs {oracle}",
                out.iterations_run
            );
            let set = backtrack(&out.field, &map, rule, BacktrackMode::All, 64)
                .map_err(|e| e.to_string())?;
            let dj = dijkstra(&map, rule).unwrap().path_len();
            ensure!(
                dj == Some(oracle as usize),
                "seed {seed}: dijkstra {dj:?} vs {oracle}"
            );
            for p in &set.paths {
                ensure!(
                    p.len() == oracle as usize,
                    "seed {seed}: path len {} vs {oracle}",
                    p.len()
                );
                ensure!(
                    p.first() == map.source() && p.last() == dest,
                    "seed {seed}: endpoints"
                );
                ensure!(p.is_connected(&map, rule), "seed {seed}: disconnected path");
                for (i, c) in p.cells().iter().enumerate() {
                    ensure!(
                        out.field.get(*c) == Cost::Finite(i as u32),
                        "seed {seed}: ascent broken at {c}"
                    );
                }
            }
        }
    }
    Ok(format!("{solvable} solvable map/rule pairs optimal"))
}

fn c3_tie_enumeration() -> Outcome {
    let mut checked = Vec::new();
    for (name, text) in fixtures::ALL {
        let map = parse_map(text).unwrap();
        if map.traversable_count() > 25 {
            continue;
        }
        for rule in CornerRule::ALL {
            let field = full_flood_component(&map, rule).field;
            let got = backtrack(&field, &map, rule, BacktrackMode::All, 1_000_000);
            match brute_force_shortest(&map, rule) {
                None => ensure!(got == Err(SearchError::NoPath), "{name}: expected NoPath"),
                Some(expected) => {
                    let got = got.map_err(|e| format!("{name}: {e}"))?;
                    let got: BTreeSet<Vec<Coord>> =
                        got.paths.iter().map(|p| p.cells().to_vec()).collect();
                    ensure!(
                        got == expected,
                        "{name} {}: {} paths vs {} brute force",
                        rule.name(),
                        got.len(),
                        expected.len()
                    );
                }
            }
        }
        checked.push(name);
    }
    let m3 = fixtures::m3();
    let field = full_flood_component(&m3, CornerRule::Allow).field;
    let n = backtrack(&field, &m3, CornerRule::Allow, BacktrackMode::All, 64)
        .unwrap()
        .len();
    ensure!(n == 2, "M3 gave {n} paths");
    Ok(format!(
        "fixtures {checked:?} match brute force; M3 has 2 paths"
    ))
}

fn c4_simple_case_parity() -> Outcome {
    for seed in 1..=50 {
        let map = generate_map(&GenSpec::new(20, 20, 0.0, seed)).unwrap();
        ensure!(
            map.obstacle_count() == 0,
            "seed {seed}: obstacles on empty map"
        );
        let (s, d) = (map.source(), map.destination().unwrap());
        let out = flood(&map, CornerRule::Allow, true);
        ensure!(
            out.iterations_run as usize == s.chebyshev(d),
            "seed {seed}: {} iterations vs chebyshev {}",
            out.iterations_run,
            s.chebyshev(d)
        );
    }
    Ok("50 placements on empty 20x20: iterations = chebyshev".into())
}

fn c5_obstacle_gap() -> Outcome {
    let map = fixtures::pocket();
    let opts = CompareOptions {
        timing: false,
        ..CompareOptions::default()
    };
    let report = compare(
        &map,
        &[Algo::Wavefront, Algo::AStar(Heuristic::Euclidean)],
        CornerRule::Allow,
        &opts,
    )
    .map_err(|e| e.to_string())?;
    let iterations = report.record(Algo::Wavefront).unwrap().iterations.unwrap();
    let expansions = report
        .record(Algo::AStar(Heuristic::Euclidean))
        .unwrap()
        .expansions
        .unwrap();
    ensure!(
        (iterations as usize) < expansions,
        "wavefront {iterations} vs astar {expansions}"
    );
    ensure!(
        iterations == POCKET_WAVEFRONT_ITERATIONS && expansions == POCKET_ASTAR_EUCLIDEAN_EXPANSIONS,
        "regression: got ({iterations}, {expansions}), recorded ({POCKET_WAVEFRONT_ITERATIONS}, {POCKET_ASTAR_EUCLIDEAN_EXPANSIONS})"
    );
    Ok(format!(
        "pocket: wavefront {iterations} iterations < astar-euclidean {expansions} expansions"
    ))
}

/// Blocks a full interior column (or row) strictly between S and D.
fn wall_off(map: &GridMap) -> Option<GridMap> {
    let (s, d) = (map.source(), map.destination()?);
    let (w, h) = (map.width(), map.height());
    let mut cells = map.cells().to_vec();
    if s.col.abs_diff(d.col) >= 2 {
        let col = (s.col + d.col) / 2;
        (1..h - 1).for_each(|row| cells[row * w + col] = CellKind::Obstacle);
    } else if s.row.abs_diff(d.row) >= 2 {
        let row = (s.row + d.row) / 2;
        (1..w - 1).for_each(|col| cells[row * w + col] = CellKind::Obstacle);
    } else {
        return None;
    }
    GridMap::from_cells(w, h, cells).ok()
}

fn c6_unreachability() -> Outcome {
    let mut maps = vec![("m4".to_string(), fixtures::m4())];
    let mut seed = 1;
    while maps.len() < 21 {
        let base = generate_map(&GenSpec::new(30, 30, 0.2, seed).solvable()).unwrap();
        if let Some(m) = wall_off(&base) {
            maps.push((format!("seed {seed}"), m));
        }
        seed += 1;
    }
    let dir = std::env::temp_dir().join(format!("wavegrid-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for (i, (name, map)) in maps.iter().enumerate() {
        for rule in CornerRule::ALL {
            let out = flood(map, rule, true);
            ensure!(
                !out.reached_destination,
                "{name}: destination reached through wall"
            );
            let oracle = bfs8_distance_field(map, rule);
            ensure!(
                out.field.finite_cells() == oracle.finite_cells(),
                "{name}: flooded region differs from reachability"
            );
        }
        let file = dir.join(format!("walled{i}.map"));
        std::fs::write(&file, map.render()).map_err(|e| e.to_string())?;
        let code = cli(&["solve", file.to_str().unwrap()]).status.code();
        ensure!(code == Some(1), "{name}: CLI exited {code:?}");
    }
    let code = cli(&["solve", &fixture_path("m4")]).status.code();
    ensure!(code == Some(1), "m4 fixture: CLI exited {code:?}");
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!(
        "{} walled maps unreachable, CLI exits 1",
        maps.len()
    ))
}

fn c7_determinism() -> Outcome {
    let specs: Vec<GenSpec> = (1..=40).map(|s| GenSpec::new(30, 30, 0.2, s)).collect();
    let opts = CompareOptions {
        timing: false,
        ..CompareOptions::default()
    };
    let a = run_suite(&specs, &Algo::ALL, CornerRule::Allow, &opts);
    let b = run_suite(&specs, &Algo::ALL, CornerRule::Allow, &opts);
    ensure!(
        a.to_json() == b.to_json(),
        "suite JSON differs between runs"
    );
    ensure!(a.to_csv() == b.to_csv(), "suite CSV differs between runs");
    let args = [
        "gen",
        "--width",
        "30",
        "--height",
        "30",
        "--density",
        "0.2",
        "--seed",
        "42",
    ];
    let (g1, g2) = (cli(&args), cli(&args));
    ensure!(g1.status.code() == Some(0), "gen failed");
    ensure!(g1.stdout == g2.stdout, "gen output differs");
    let lib = generate_map(&GenSpec::new(30, 30, 0.2, 42))
        .unwrap()
        .render();
    ensure!(g1.stdout == lib.as_bytes(), "CLI and library maps differ");
    Ok(format!(
        "{} suite entries and gen output byte-identical",
        specs.len()
    ))
}

fn coord_ok(v: &Value, w: u64, h: u64) -> bool {
    match v.as_array().map(Vec::as_slice) {
        Some([r, c]) => r.as_u64().is_some_and(|r| r < h) && c.as_u64().is_some_and(|c| c < w),
        _ => false,
    }
}

/// Checks `{"width":W,"height":H,"iterations":[{"k","costed","new_sources"}...]}`.
fn validate_trace(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("trace is not an object")?;
    let keys: BTreeSet<&str> = obj.keys().map(String::as_str).collect();
    ensure!(
        keys == BTreeSet::from(["width", "height", "iterations"]),
        "trace keys {keys:?}"
    );
    let w = obj["width"].as_u64().ok_or("width")?;
    let h = obj["height"].as_u64().ok_or("height")?;
    for (i, step) in obj["iterations"]
        .as_array()
        .ok_or("iterations")?
        .iter()
        .enumerate()
    {
        let step = step.as_object().ok_or("step is not an object")?;
        let keys: BTreeSet<&str> = step.keys().map(String::as_str).collect();
        ensure!(
            keys == BTreeSet::from(["k", "costed", "new_sources"]),
            "step keys {keys:?}"
        );
        ensure!(
            step["k"].as_u64() == Some(i as u64 + 1),
            "k not consecutive at {i}"
        );
        for key in ["costed", "new_sources"] {
            let list = step[key].as_array().ok_or(key)?;
            ensure!(
                list.iter().all(|c| coord_ok(c, w, h)),
                "bad coordinate in {key}"
            );
        }
    }
    Ok(())
}

fn c8_format_fidelity() -> Outcome {
    for (name, text) in fixtures::ALL {
        let map = parse_map(text).map_err(|e| format!("{name}: {e}"))?;
        ensure!(map.render() == text, "{name}: render differs from file");
        for rule in CornerRule::ALL {
            for stop in [true, false] {
                let json: Value =
                    serde_json::from_str(&flood(&map, rule, stop).trace.to_json()).unwrap();
                validate_trace(&json).map_err(|e| format!("{name}: {e}"))?;
            }
        }
        let file = fixture_path(name);
        let on_disk = std::fs::read_to_string(&file).map_err(|e| e.to_string())?;
        ensure!(
            on_disk == text,
            "{name}: fixture file differs from embedded copy"
        );
        let trace_file =
            std::env::temp_dir().join(format!("wavegrid-trace-{}-{name}.json", std::process::id()));
        cli(&["solve", &file, "--trace", trace_file.to_str().unwrap()]);
        let written: Value =
            serde_json::from_str(&std::fs::read_to_string(&trace_file).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        std::fs::remove_file(&trace_file).ok();
        validate_trace(&written).map_err(|e| format!("{name} (CLI): {e}"))?;
    }
    Ok(format!(
        "{} fixtures round-trip; traces match schema",
        fixtures::ALL.len()
    ))
}

fn c9_heuristics() -> Outcome {
    let mut maps: Vec<(String, GridMap)> = fixtures::ALL
        .iter()
        .map(|(n, t)| (n.to_string(), parse_map(t).unwrap()))
        .collect();
    maps.extend(
        generated(1..=200)
            .into_iter()
            .map(|(s, m)| (format!("seed {s}"), m)),
    );
    for (name, map) in &maps {
        for rule in CornerRule::ALL {
            let dj = dijkstra(map, rule).unwrap().path_len();
            let ac = astar(map, rule, Heuristic::Chebyshev).unwrap().path_len();
            ensure!(
                ac == dj,
                "{name}: astar-chebyshev {ac:?} vs dijkstra {dj:?}"
            );
        }
    }
    let witness = fixtures::euclid_detour();
    let opt = dijkstra(&witness, CornerRule::Allow)
        .unwrap()
        .path_len()
        .unwrap();
    let euclid = astar(&witness, CornerRule::Allow, Heuristic::Euclidean)
        .unwrap()
        .path_len()
        .unwrap();
    ensure!(
        euclid > opt,
        "euclid_detour: astar-euclidean {euclid} not above optimum {opt}"
    );
    Ok(format!(
        "{} maps chebyshev-optimal; euclidean witness {euclid} > {opt}",
        maps.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 oracle equivalence", c1_oracle_equivalence),
        ("2 optimality", c2_optimality),
        ("3 tie enumeration", c3_tie_enumeration),
        ("4 simple-case parity", c4_simple_case_parity),
        ("5 obstacle-case gap", c5_obstacle_gap),
        ("6 unreachability", c6_unreachability),
        ("7 determinism", c7_determinism),
        ("8 format fidelity", c8_format_fidelity),
        ("9 heuristic behavior", c9_heuristics),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL  criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
