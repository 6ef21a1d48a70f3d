//! Scenario JSON round trip through the library API.
//!
//! Builds an instance in memory, writes it as a scenario file, loads it
//! back, and checks the loaded instance solves identically. The same format
//! is what `proxyfinder solve --scenario` consumes and `proxyfinder
//! scenario export` / `gen-vc` produce.
//!
//! Run: cargo run --example scenario_files

use proxyfinder::reductions::{encode_vertex_cover, Graph};
use proxyfinder::scenario_io::{self, ScenarioFile};
use proxyfinder::solvers::{solve_exact_min, SolverOptions};

fn main() {
    let graph = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
    let inst = encode_vertex_cover(&graph, 2).unwrap().into_instance();

    let file = ScenarioFile::from_instance(&inst).unwrap();
    let json = scenario_io::to_json_string(&file).unwrap();
    println!("serialized scenario ({} bytes):", json.len());
    for line in json.lines().take(14) {
        println!("  {line}");
    }
    println!("  ...");

    let path = std::env::temp_dir().join("proxyfinder_example_scenario.json");
    scenario_io::save(&inst, &path).unwrap();
    let loaded = scenario_io::load(&path).unwrap();
    std::fs::remove_file(&path).ok();

    let opts = SolverOptions::default();
    let original = solve_exact_min(&inst, &opts).unwrap();
    let roundtrip = solve_exact_min(&loaded, &opts).unwrap();
    println!();
    println!("exact solve before export: subset {:?}", original.subset);
    println!("exact solve after reload:  subset {:?}", roundtrip.subset);
    assert_eq!(original.subset, roundtrip.subset);
    assert_eq!(
        original.achieved_uncertainty_bits,
        roundtrip.achieved_uncertainty_bits
    );
    println!("round trip preserved the solve exactly");
}
