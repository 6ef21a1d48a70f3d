//! Solvers for the proxy decision and minimization problems.
//!
//! `solve_decision` and `solve_exact_min` search subsets exhaustively in
//! canonical order (size ascending, then lexicographic), so the reported
//! witness is the minimum-cardinality feasible subset, lexicographically
//! smallest among minima. `solve_greedy` is the heuristic: it grows the
//! subset one function at a time, always adding the candidate that
//! maximizes mutual information with the target, until the threshold is
//! met or the pool is exhausted. Because uncertainty never increases as the
//! subset grows (under exact estimation), the greedy answer can only be too
//! large, never infeasible when a feasible subset exists.
//!
//! All solvers are deterministic: candidate ties break to the lowest
//! function index, and parallel candidate evaluation reduces in canonical
//! order, so serial and parallel runs return identical results, including
//! the reported estimator-call counts (parallel speculation past an early
//! exit is not charged).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combos::combinations;
use crate::error::{Error, Result};
use crate::estimation::{EstimatorConfig, EstimatorKind, EstimatorMode};
use crate::model::{Assignment, AttributeSchema, FunctionDef, JointDistribution, ProxyInstance};
use crate::rng::SplitMix64;

/// Default cap on `|F|` for the exhaustive solvers (2^20 subsets).
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Maximum function count the exhaustive solvers accept.
    pub exhaustive_cap: usize,
    /// Evaluate candidate subsets on the rayon pool. Results are identical
    /// to serial execution.
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            parallel: false,
        }
    }
}

impl SolverOptions {
    pub fn parallel() -> Self {
        SolverOptions {
            parallel: true,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMethod {
    Exact,
    Greedy,
    Decision,
}

/// One greedy step: which function was added, the mutual-information gain it
/// brought, and the uncertainty after adding it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStep {
    pub chosen: usize,
    pub mi_gain: f64,
    pub uncertainty_after: f64,
}

/// Outcome of a solver run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveResult {
    pub feasible: bool,
    /// Witness subset in strictly increasing index order; empty when
    /// infeasible (or when the empty set already meets the threshold).
    pub subset: Vec<usize>,
    /// Uncertainty of the witness when feasible. When infeasible: the full
    /// set's uncertainty for `exact`/`greedy` (how far F falls short), the
    /// best value seen within the size bound for `decision`.
    pub achieved_uncertainty_bits: f64,
    pub estimator_calls: usize,
    pub method: SolveMethod,
    /// Per-step log; populated by the greedy solver only.
    pub trace: Vec<TraceStep>,
}

/// Decision problem: is there a subset of size at most `k` with uncertainty
/// at or below the threshold? Searches subsets in canonical order and
/// returns the first witness.
pub fn solve_decision(inst: &ProxyInstance, opts: &SolverOptions) -> Result<SolveResult> {
    let k = inst
        .k()
        .ok_or_else(|| Error::Input("decision mode needs the size bound k".into()))?;
    check_cap(inst, opts)?;
    let search = search_subsets(inst, k, opts)?;
    finish_exhaustive(inst, search, SolveMethod::Decision)
}

/// Minimization problem: the smallest subset meeting the threshold,
/// lexicographically smallest among minima. Ignores the decision bound `k`.
pub fn solve_exact_min(inst: &ProxyInstance, opts: &SolverOptions) -> Result<SolveResult> {
    check_cap(inst, opts)?;
    let search = search_subsets(inst, inst.num_functions(), opts)?;
    finish_exhaustive(inst, search, SolveMethod::Exact)
}

fn check_cap(inst: &ProxyInstance, opts: &SolverOptions) -> Result<()> {
    if inst.num_functions() > opts.exhaustive_cap {
        return Err(Error::SizeLimit(format!(
            "{} functions exceed the exhaustive cap of {}; use the greedy solver",
            inst.num_functions(),
            opts.exhaustive_cap
        )));
    }
    Ok(())
}

struct SearchOutcome {
    witness: Option<(Vec<usize>, f64)>,
    /// Minimum uncertainty over all evaluated subsets.
    best_seen: f64,
    /// Value of the last evaluated subset (the full set when the search ran
    /// to exhaustion at max_size = |F|).
    last_value: f64,
    calls: usize,
}

/// Evaluates subsets of size 0..=max_size in canonical order until one meets
/// the threshold. Call counts are canonical: parallel evaluation past the
/// witness position is not charged.
fn search_subsets(
    inst: &ProxyInstance,
    max_size: usize,
    opts: &SolverOptions,
) -> Result<SearchOutcome> {
    let n = inst.num_functions();
    let alpha = inst.alpha();
    let mut outcome = SearchOutcome {
        witness: None,
        best_seen: f64::INFINITY,
        last_value: f64::NAN,
        calls: 0,
    };

    for size in 0..=max_size.min(n) {
        if opts.parallel {
            let class: Vec<Vec<usize>> = combinations(n, size).collect();
            let values: Vec<Result<f64>> = class
                .par_iter()
                .map(|subset| inst.uncertainty(subset).map(|r| r.value_bits))
                .collect();
            for (subset, value) in class.into_iter().zip(values) {
                let value = value?;
                outcome.calls += 1;
                outcome.best_seen = outcome.best_seen.min(value);
                outcome.last_value = value;
                if value <= alpha {
                    outcome.witness = Some((subset, value));
                    return Ok(outcome);
                }
            }
        } else {
            for subset in combinations(n, size) {
                let value = inst.uncertainty(&subset)?.value_bits;
                outcome.calls += 1;
                outcome.best_seen = outcome.best_seen.min(value);
                outcome.last_value = value;
                if value <= alpha {
                    outcome.witness = Some((subset, value));
                    return Ok(outcome);
                }
            }
        }
    }
    Ok(outcome)
}

fn finish_exhaustive(
    inst: &ProxyInstance,
    mut search: SearchOutcome,
    method: SolveMethod,
) -> Result<SolveResult> {
    match search.witness.take() {
        Some((subset, _)) => {
            let value = reverify(inst, &subset, &mut search.calls)?;
            Ok(SolveResult {
                feasible: true,
                subset,
                achieved_uncertainty_bits: value,
                estimator_calls: search.calls,
                method,
                trace: Vec::new(),
            })
        }
        None => {
            let achieved = match method {
                // The last subset enumerated at max size |F| is F itself.
                SolveMethod::Exact | SolveMethod::Greedy => search.last_value,
                SolveMethod::Decision => search.best_seen,
            };
            Ok(SolveResult {
                feasible: false,
                subset: Vec::new(),
                achieved_uncertainty_bits: achieved,
                estimator_calls: search.calls,
                method,
                trace: Vec::new(),
            })
        }
    }
}

/// Re-evaluates a found witness before reporting it. The empty subset's
/// threshold check is its own verification, so it is not re-charged.
fn reverify(inst: &ProxyInstance, subset: &[usize], calls: &mut usize) -> Result<f64> {
    let value = inst.uncertainty(subset)?.value_bits;
    if !subset.is_empty() {
        *calls += 1;
    }
    if value > inst.alpha() {
        return Err(Error::Estimation(format!(
            "witness {subset:?} failed re-verification: {value} > alpha = {}",
            inst.alpha()
        )));
    }
    Ok(value)
}

/// Greedy heuristic for the minimization problem. Starts from the empty set
/// (already feasible when `H(target) <= alpha`), then repeatedly adds the
/// function maximizing mutual information with the target, lowest index
/// winning ties, until the threshold is met or every function is in.
/// Ignores the decision bound `k`; callers wanting a bounded answer check
/// the witness size afterwards. Uses at most `|F|^2 + |F| + 1` estimator
/// calls.
pub fn solve_greedy(inst: &ProxyInstance, opts: &SolverOptions) -> Result<SolveResult> {
    let n = inst.num_functions();
    let alpha = inst.alpha();
    // Ties in exact mode allow for accumulated float noise; empirical
    // estimates are already deterministic per the sub-seeding rule, so exact
    // equality is the right comparison there.
    let tie_eps = match inst.estimator().mode {
        EstimatorMode::Exact => 1e-12,
        EstimatorMode::Empirical { .. } => 0.0,
    };

    let mut calls = 0usize;
    let empty = inst.uncertainty(&[])?;
    calls += 1;
    if empty.value_bits <= alpha {
        return Ok(SolveResult {
            feasible: true,
            subset: Vec::new(),
            achieved_uncertainty_bits: empty.value_bits,
            estimator_calls: calls,
            method: SolveMethod::Greedy,
            trace: Vec::new(),
        });
    }

    let mut chosen: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut trace = Vec::new();
    let mut mi_before = empty.mutual_information_bits;
    let mut last_value = empty.value_bits;

    while !remaining.is_empty() {
        let evaluate = |&f: &usize| -> Result<(f64, f64)> {
            let mut candidate = chosen.clone();
            candidate.push(f);
            let r = inst.uncertainty(&candidate)?;
            Ok((r.mutual_information_bits, r.value_bits))
        };
        let scored: Vec<(f64, f64)> = if opts.parallel {
            remaining
                .par_iter()
                .map(evaluate)
                .collect::<Result<Vec<_>>>()?
        } else {
            remaining.iter().map(evaluate).collect::<Result<Vec<_>>>()?
        };
        calls += remaining.len();

        // Candidates are scanned in ascending index order; a strictly higher
        // score is required to displace the incumbent, so equal scores keep
        // the lowest index.
        let mut best = 0;
        for i in 1..scored.len() {
            if scored[i].0 > scored[best].0 + tie_eps {
                best = i;
            }
        }
        let picked = remaining.remove(best);
        let (mi_after, value_after) = scored[best];
        chosen.push(picked);
        trace.push(TraceStep {
            chosen: picked,
            mi_gain: mi_after - mi_before,
            uncertainty_after: value_after,
        });
        mi_before = mi_after;
        last_value = value_after;

        if value_after <= alpha {
            chosen.sort_unstable();
            let value = reverify(inst, &chosen, &mut calls)?;
            return Ok(SolveResult {
                feasible: true,
                subset: chosen,
                achieved_uncertainty_bits: value,
                estimator_calls: calls,
                method: SolveMethod::Greedy,
                trace,
            });
        }
    }

    Ok(SolveResult {
        feasible: false,
        subset: Vec::new(),
        achieved_uncertainty_bits: last_value,
        estimator_calls: calls,
        method: SolveMethod::Greedy,
        trace,
    })
}

/// One greedy-vs-exact comparison row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareRow {
    pub index: usize,
    pub feasible: bool,
    pub greedy_size: usize,
    pub exact_size: usize,
    /// `greedy_size / exact_size` when both solvers found a witness (1.0 for
    /// the 0/0 case); absent when the instance is infeasible.
    pub ratio: Option<f64>,
    pub greedy_calls: usize,
    pub exact_calls: usize,
    /// Greedy and exact must agree on feasibility; a mismatch indicates an
    /// estimator or solver defect and is surfaced rather than folded into
    /// the ratio.
    pub feasibility_mismatch: bool,
}

/// Aggregate greedy-vs-exact comparison over a batch of instances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub rows: Vec<CompareRow>,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
}

/// Runs both solvers on every instance and reports per-instance sizes and
/// size ratios.
pub fn compare(instances: &[ProxyInstance], opts: &SolverOptions) -> Result<ComparisonReport> {
    let mut rows = Vec::with_capacity(instances.len());
    let mut ratios = Vec::new();
    for (index, inst) in instances.iter().enumerate() {
        let greedy = solve_greedy(inst, opts)?;
        let exact = solve_exact_min(inst, opts)?;
        let mismatch = greedy.feasible != exact.feasible;
        let ratio = if !mismatch && greedy.feasible {
            let r = if exact.subset.is_empty() {
                1.0
            } else {
                greedy.subset.len() as f64 / exact.subset.len() as f64
            };
            ratios.push(r);
            Some(r)
        } else {
            None
        };
        rows.push(CompareRow {
            index,
            feasible: exact.feasible,
            greedy_size: greedy.subset.len(),
            exact_size: exact.subset.len(),
            ratio,
            greedy_calls: greedy.estimator_calls,
            exact_calls: exact.estimator_calls,
            feasibility_mismatch: mismatch,
        });
    }
    let max_ratio = ratios.iter().copied().fold(None, |acc: Option<f64>, r| {
        Some(acc.map_or(r, |a| a.max(r)))
    });
    let mean_ratio = if ratios.is_empty() {
        None
    } else {
        Some(ratios.iter().sum::<f64>() / ratios.len() as f64)
    };
    Ok(ComparisonReport {
        rows,
        max_ratio,
        mean_ratio,
    })
}

/// Generates `count` instances with per-instance seeds derived from `seed`.
pub fn random_batch(
    cfg: &RandomInstanceConfig,
    count: usize,
    seed: u64,
) -> Result<Vec<ProxyInstance>> {
    const TAG_BATCH: u64 = 0x9d01_7e6a_11c9_0020;
    (0..count)
        .map(|i| random_instance(cfg, crate::rng::derive_seed(seed, TAG_BATCH, [i as u64])))
        .collect()
}

/// How the threshold of a generated instance is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaRule {
    Zero,
    /// `alpha = fraction * H(target)`, computed exactly from the generated
    /// distribution.
    FractionOfBase(f64),
}

/// Parameter ranges for [`random_instance`]. All ranges are inclusive.
#[derive(Debug, Clone)]
pub struct RandomInstanceConfig {
    pub min_attributes: usize,
    pub max_attributes: usize,
    pub min_domain: usize,
    pub max_domain: usize,
    pub min_functions: usize,
    pub max_functions: usize,
    /// Probability that a generated function is a lookup table rather than
    /// a projection.
    pub table_fraction: f64,
    pub max_table_inputs: usize,
    pub min_output_domain: usize,
    pub max_output_domain: usize,
    pub alpha_rule: AlphaRule,
    /// Force function 0 to be a projection of the target (a planted
    /// witness).
    pub plant_target_projection: bool,
}

impl Default for RandomInstanceConfig {
    fn default() -> Self {
        RandomInstanceConfig {
            min_attributes: 2,
            max_attributes: 5,
            min_domain: 2,
            max_domain: 2,
            min_functions: 1,
            max_functions: 8,
            table_fraction: 0.5,
            max_table_inputs: 2,
            min_output_domain: 2,
            max_output_domain: 3,
            alpha_rule: AlphaRule::FractionOfBase(0.5),
            plant_target_projection: false,
        }
    }
}

fn check_range(name: &str, lo: usize, hi: usize, min_lo: usize) -> Result<()> {
    if lo < min_lo || hi < lo {
        return Err(Error::Input(format!("invalid {name} range [{lo}, {hi}]")));
    }
    Ok(())
}

/// Generates a random instance: a Dirichlet-like tabular joint (uniform
/// weights normalized over the product domain), a random mix of projection
/// and table functions, and a threshold per the alpha rule. Deterministic
/// for a fixed `(config, seed)`.
pub fn random_instance(cfg: &RandomInstanceConfig, seed: u64) -> Result<ProxyInstance> {
    check_range("attribute", cfg.min_attributes, cfg.max_attributes, 1)?;
    check_range("domain", cfg.min_domain, cfg.max_domain, 2)?;
    check_range("function", cfg.min_functions, cfg.max_functions, 0)?;
    check_range(
        "output domain",
        cfg.min_output_domain,
        cfg.max_output_domain,
        1,
    )?;
    if cfg.max_table_inputs < 1 {
        return Err(Error::Input("max_table_inputs must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&cfg.table_fraction) {
        return Err(Error::Input(format!(
            "table_fraction {} outside [0, 1]",
            cfg.table_fraction
        )));
    }
    if let AlphaRule::FractionOfBase(f) = cfg.alpha_rule {
        if !f.is_finite() || f < 0.0 {
            return Err(Error::Input(format!(
                "alpha fraction {f} must be nonnegative"
            )));
        }
    }

    let mut rng = SplitMix64::new(seed);
    let range =
        |rng: &mut SplitMix64, lo: usize, hi: usize| lo + rng.below((hi - lo + 1) as u64) as usize;

    let num_attrs = range(&mut rng, cfg.min_attributes, cfg.max_attributes);
    let attrs: Vec<(String, Vec<String>)> = (0..num_attrs)
        .map(|i| {
            let size = range(&mut rng, cfg.min_domain, cfg.max_domain);
            (format!("a{i}"), (0..size).map(|v| v.to_string()).collect())
        })
        .collect();
    let schema = AttributeSchema::new(attrs)?;
    if schema.num_states() > crate::model::DEFAULT_STATE_CAP {
        return Err(Error::SizeLimit(format!(
            "generated product domain has {} states, above the cap",
            schema.num_states()
        )));
    }

    let states: Vec<Assignment> = schema.states().collect();
    let mut weights: Vec<f64> = Vec::with_capacity(states.len());
    let mut total = 0.0;
    for _ in 0..states.len() {
        let w = loop {
            let w = rng.next_f64();
            if w > 0.0 {
                break w;
            }
        };
        total += w;
        weights.push(w);
    }
    let entries: Vec<(Assignment, f64)> = states
        .into_iter()
        .zip(weights)
        .map(|(a, w)| (a, w / total))
        .collect();
    let target_index = range(&mut rng, 0, num_attrs - 1);
    let target_name = schema.attribute(target_index).name().to_string();

    let num_functions = range(&mut rng, cfg.min_functions, cfg.max_functions);
    let mut functions = Vec::with_capacity(num_functions);
    for i in 0..num_functions {
        let name = format!("f{i}");
        if cfg.plant_target_projection && i == 0 {
            functions.push(FunctionDef::projection(&schema, name, &target_name)?);
            continue;
        }
        if rng.next_f64() < cfg.table_fraction {
            let num_inputs = range(&mut rng, 1, cfg.max_table_inputs.min(num_attrs));
            // Partial Fisher-Yates selection of distinct input attributes.
            let mut pool: Vec<usize> = (0..num_attrs).collect();
            for j in 0..num_inputs {
                let pick = j + rng.below((num_attrs - j) as u64) as usize;
                pool.swap(j, pick);
            }
            let input_names: Vec<String> = pool[..num_inputs]
                .iter()
                .map(|&a| schema.attribute(a).name().to_string())
                .collect();
            let input_refs: Vec<&str> = input_names.iter().map(String::as_str).collect();
            let out_size = range(&mut rng, cfg.min_output_domain, cfg.max_output_domain);
            let cells: usize = pool[..num_inputs]
                .iter()
                .map(|&a| schema.attribute(a).domain_size())
                .product();
            let outputs: Vec<u32> = (0..cells)
                .map(|_| rng.below(out_size as u64) as u32)
                .collect();
            let out_domain: Vec<String> = (0..out_size).map(|v| format!("z{v}")).collect();
            functions.push(FunctionDef::table_from_outputs(
                &schema,
                name,
                &input_refs,
                out_domain,
                outputs,
            )?);
        } else {
            let attr = range(&mut rng, 0, num_attrs - 1);
            functions.push(FunctionDef::projection(
                &schema,
                name,
                schema.attribute(attr).name(),
            )?);
        }
    }

    let distribution = JointDistribution::tabular(schema, entries)?;
    let alpha = match cfg.alpha_rule {
        AlphaRule::Zero => 0.0,
        AlphaRule::FractionOfBase(f) => {
            let support = distribution.enumerate_support()?;
            let marginal = support.marginal(
                target_index,
                distribution.schema().attribute(target_index).domain_size(),
            );
            let base: f64 = marginal
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| -p * p.log2())
                .sum();
            f * base
        }
    };
    ProxyInstance::new(
        distribution,
        functions,
        &target_name,
        alpha,
        None,
        EstimatorConfig {
            mode: EstimatorMode::Exact,
            kind: EstimatorKind::ConditionalEntropy,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn decision_with_k_zero_and_loose_alpha_accepts_empty_set() {
        let inst = fixtures::xor_triple()
            .with_alpha(1.0)
            .unwrap()
            .with_k(Some(0))
            .unwrap();
        let r = solve_decision(&inst, &SolverOptions::default()).unwrap();
        assert!(r.feasible);
        assert!(r.subset.is_empty());
        assert_eq!(r.estimator_calls, 1);
    }

    #[test]
    fn decision_needs_k() {
        let inst = fixtures::xor_triple();
        assert!(matches!(
            solve_decision(&inst, &SolverOptions::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn xor_needs_both_functions() {
        let inst = fixtures::xor_triple();
        let r = solve_exact_min(&inst, &SolverOptions::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.subset, vec![0, 1]);
        assert!(r.achieved_uncertainty_bits.abs() < 1e-12);
    }

    #[test]
    fn planted_projection_is_found_first() {
        let inst = fixtures::copy_pair();
        let exact = solve_exact_min(&inst, &SolverOptions::default()).unwrap();
        assert_eq!(exact.subset, vec![0]);
        let greedy = solve_greedy(&inst, &SolverOptions::default()).unwrap();
        assert_eq!(greedy.subset, vec![0]);
        assert_eq!(greedy.trace.len(), 1);
        assert!((greedy.trace[0].mi_gain - 1.0).abs() < 1e-9);
    }

    #[test]
    fn greedy_xor_with_decoy_breaks_ties_to_lowest_index() {
        let inst = fixtures::xor_with_decoy();
        let r = solve_greedy(&inst, &SolverOptions::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.subset, vec![0, 1]);
        assert_eq!(r.trace[0].chosen, 0);
        assert!(r.trace[0].mi_gain.abs() < 1e-12);
        assert_eq!(r.trace[1].chosen, 1);
    }

    #[test]
    fn greedy_infeasible_reports_full_set_uncertainty() {
        // Independent decoy only; target cannot be pinned down.
        let inst = fixtures::independent_pair().with_alpha(0.1).unwrap();
        let r = solve_greedy(&inst, &SolverOptions::default()).unwrap();
        assert!(!r.feasible);
        assert!(r.subset.is_empty());
        assert!((r.achieved_uncertainty_bits - 1.0).abs() < 1e-12);
        let exact = solve_exact_min(&inst, &SolverOptions::default()).unwrap();
        assert!(!exact.feasible);
        assert!((exact.achieved_uncertainty_bits - 1.0).abs() < 1e-12);
    }

    #[test]
    fn greedy_call_budget() {
        for seed in 0..20 {
            let inst = random_instance(&RandomInstanceConfig::default(), seed).unwrap();
            let n = inst.num_functions();
            let r = solve_greedy(&inst, &SolverOptions::default()).unwrap();
            assert!(
                r.estimator_calls <= n * n + n + 1,
                "seed {seed}: {} > budget",
                r.estimator_calls
            );
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = SolverOptions::default();
        let parallel = SolverOptions::parallel();
        for seed in [3u64, 11, 29] {
            let inst = random_instance(&RandomInstanceConfig::default(), seed).unwrap();
            let a = solve_greedy(&inst, &serial).unwrap();
            let b = solve_greedy(&inst, &parallel).unwrap();
            assert_eq!(a.subset, b.subset);
            assert_eq!(a.estimator_calls, b.estimator_calls);
            assert_eq!(
                a.achieved_uncertainty_bits.to_bits(),
                b.achieved_uncertainty_bits.to_bits()
            );
            let c = solve_exact_min(&inst, &serial).unwrap();
            let d = solve_exact_min(&inst, &parallel).unwrap();
            assert_eq!(c.subset, d.subset);
            assert_eq!(c.estimator_calls, d.estimator_calls);
        }
    }

    #[test]
    fn exhaustive_cap_errors_point_to_greedy() {
        let inst = fixtures::xor_triple();
        let opts = SolverOptions {
            exhaustive_cap: 1,
            ..Default::default()
        };
        match solve_exact_min(&inst, &opts) {
            Err(Error::SizeLimit(msg)) => assert!(msg.contains("greedy")),
            other => panic!("expected size error, got {other:?}"),
        }
    }

    #[test]
    fn decision_finds_target_projection_within_k_one() {
        let inst = fixtures::copy_pair().with_k(Some(1)).unwrap();
        let r = solve_decision(&inst, &SolverOptions::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.subset, vec![0]);
    }

    #[test]
    fn greedy_on_triangle_encoding_picks_the_tiebreak_pair() {
        let g = crate::reductions::Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = crate::reductions::encode_vertex_cover(&g, 2)
            .unwrap()
            .into_instance();
        // Every singleton leaves a full bit, so the first pick is index 0 by
        // tie-break; {0,1} is the first pair reaching a cover.
        let greedy = solve_greedy(&inst, &SolverOptions::default()).unwrap();
        assert!(greedy.feasible);
        assert_eq!(greedy.subset, vec![0, 1]);
        let exact = solve_exact_min(&inst, &SolverOptions::default()).unwrap();
        assert_eq!(exact.subset, vec![0, 1]);
        let report = compare(std::slice::from_ref(&inst), &SolverOptions::default()).unwrap();
        assert_eq!(report.rows[0].ratio, Some(1.0));
    }

    #[test]
    fn random_instance_smoke_config() {
        let cfg = RandomInstanceConfig {
            min_attributes: 4,
            max_attributes: 4,
            min_functions: 6,
            max_functions: 6,
            ..Default::default()
        };
        let inst = random_instance(&cfg, 7).unwrap();
        assert_eq!(inst.schema().len(), 4);
        assert_eq!(inst.num_functions(), 6);
    }

    #[test]
    fn random_instance_is_deterministic() {
        let cfg = RandomInstanceConfig::default();
        let a = random_instance(&cfg, 7).unwrap();
        let b = random_instance(&cfg, 7).unwrap();
        assert_eq!(a.schema(), b.schema());
        assert_eq!(a.functions(), b.functions());
        assert_eq!(a.alpha(), b.alpha());
        assert_eq!(a.target(), b.target());
    }

    #[test]
    fn planted_witness_solves_at_alpha_zero() {
        let cfg = RandomInstanceConfig {
            plant_target_projection: true,
            alpha_rule: AlphaRule::Zero,
            ..Default::default()
        };
        for seed in 0..10 {
            let inst = random_instance(&cfg, seed).unwrap();
            let base = inst.uncertainty(&[]).unwrap().base_entropy_bits;
            let r = solve_exact_min(&inst, &SolverOptions::default()).unwrap();
            assert!(r.feasible);
            if base > 0.0 {
                assert_eq!(r.subset.len(), 1);
            } else {
                assert!(r.subset.is_empty());
            }
        }
    }

    #[test]
    fn compare_ratios_are_at_least_one() {
        let instances: Vec<ProxyInstance> = (0..25)
            .map(|seed| random_instance(&RandomInstanceConfig::default(), seed).unwrap())
            .collect();
        let report = compare(&instances, &SolverOptions::default()).unwrap();
        assert_eq!(report.rows.len(), 25);
        for row in &report.rows {
            assert!(!row.feasibility_mismatch);
            if let Some(r) = row.ratio {
                assert!(r >= 1.0);
            }
        }
        if let Some(max) = report.max_ratio {
            assert!(max >= 1.0);
        }
    }
}
