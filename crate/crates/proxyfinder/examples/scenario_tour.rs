//! Tour of the built-in scenarios: display size, location, user identity.
//!
//! Solves each catalog scenario across the documented alpha grid, with the
//! direct-read function present and blocked. With the direct read in the
//! pool it is always the minimum witness; blocking it is where the proxy
//! chains appear: width+height for the display bucket, a high-coverage
//! radio signal for the region, and attribute combinations for the user.
//!
//! Run: cargo run --example scenario_tour

use proxyfinder::scenarios::{build_scenario_variant, catalog, ALPHA_GRID};
use proxyfinder::solvers::{solve_exact_min, solve_greedy, SolverOptions};

fn main() {
    let opts = SolverOptions::default();
    for entry in catalog() {
        println!("=== {} — {}", entry.name, entry.summary);
        for include_direct in [true, false] {
            let inst =
                build_scenario_variant(entry.name, include_direct, entry.default_seed).unwrap();
            let base = inst.uncertainty(&[]).unwrap().base_entropy_bits;
            println!(
                "  direct read {}: {} functions, H(target) = {base:.4} bits",
                if include_direct { "present" } else { "blocked" },
                inst.num_functions()
            );
            for fraction in ALPHA_GRID {
                let inst = inst.clone().with_alpha(fraction * base).unwrap();
                let exact = solve_exact_min(&inst, &opts).unwrap();
                let greedy = solve_greedy(&inst, &opts).unwrap();
                let witness: Vec<&str> = exact
                    .subset
                    .iter()
                    .map(|&i| inst.function(i).name())
                    .collect();
                println!(
                    "    alpha = {:.2} H | exact {} | greedy size {} | witness {:?}",
                    fraction,
                    if exact.feasible {
                        format!("size {}", exact.subset.len())
                    } else {
                        "infeasible".to_string()
                    },
                    greedy.subset.len(),
                    witness
                );
            }
        }
        println!();
    }
}
