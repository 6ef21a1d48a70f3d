//! The XOR instance: why single-function scores can be blind.
//!
//! `a3 = a1 XOR a2` with `a1`, `a2` independent fair coins. Each projection
//! alone has zero mutual information with the target, yet together they
//! determine it exactly. A third decoy function shows how the greedy
//! solver's tie-break handles an all-zeros first round.
//!
//! Run: cargo run --example xor_pair

use proxyfinder::fixtures;
use proxyfinder::solvers::{solve_exact_min, solve_greedy, SolverOptions};

fn main() {
    let inst = fixtures::xor_triple();
    println!(
        "XOR instance: target `{}`, alpha = {} bits",
        inst.target_name(),
        inst.alpha()
    );
    println!();

    println!("{:<22} {:>14} {:>18}", "subset", "U (bits)", "I (bits)");
    for subset in [vec![], vec![0], vec![1], vec![0, 1]] {
        let r = inst.uncertainty(&subset).unwrap();
        let names: Vec<&str> = subset.iter().map(|&i| inst.function(i).name()).collect();
        println!(
            "{:<22} {:>14.6} {:>18.6}",
            if names.is_empty() {
                "(empty)".to_string()
            } else {
                names.join("+")
            },
            r.value_bits,
            r.mutual_information_bits
        );
    }

    let opts = SolverOptions::default();
    let exact = solve_exact_min(&inst, &opts).unwrap();
    println!();
    println!(
        "exact minimum: {:?} (size {}, {} estimator calls)",
        exact.subset,
        exact.subset.len(),
        exact.estimator_calls
    );

    // With a decoy added, every singleton has zero gain; the greedy picks
    // the lowest index, then completes the pair.
    let decoy = fixtures::xor_with_decoy();
    let greedy = solve_greedy(&decoy, &opts).unwrap();
    println!();
    println!("greedy on XOR + decoy:");
    for step in &greedy.trace {
        println!(
            "  picked f{} `{}` | mi gain {:.6} | uncertainty after {:.6}",
            step.chosen,
            decoy.function(step.chosen).name(),
            step.mi_gain,
            step.uncertainty_after
        );
    }
    println!(
        "greedy witness {:?}, feasible = {}, {} estimator calls",
        greedy.subset, greedy.feasible, greedy.estimator_calls
    );
}
