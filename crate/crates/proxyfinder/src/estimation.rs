//! Uncertainty estimation: Shannon entropy, conditional entropy, and mutual
//! information between a target attribute and the joint output of a function
//! subset, in bits.
//!
//! Two estimation modes are supported. Exact mode enumerates the
//! distribution's support and computes plug-in quantities from true
//! probabilities. Empirical mode draws a seeded sample and applies the
//! plug-in (maximum-likelihood) estimator over observed joint frequencies,
//! with no bias correction. Empirical sub-seeds derive deterministically from
//! `(seed, subset)` so results do not depend on evaluation order or
//! parallelism.
//!
//! Two estimator kinds are supported. `ConditionalEntropy` scores a subset
//! `S` as `H(target | {X_f}_{f in S})`, the residual uncertainty after
//! observing the subset's outputs; the empty subset scores `H(target)`, and
//! mutual information is the complement `H(target) - H(target | ...)`.
//! `PointConditioned` is the variant used by the vertex-cover reduction: it
//! conditions on the single assignment that sets the subset's input
//! attributes to value index 1 and every other non-target attribute to 0,
//! and returns the entropy of the target under that one event.
//!
//! The chain-rule identity `value + mi = base` and the bounds
//! `0 <= value <= base` are guaranteed for the conditional-entropy kind;
//! the point-conditioned value may exceed the marginal entropy (a non-cover
//! point leaves a full bit of uncertainty even when the marginal carries
//! less), so only the identity on the raw mutual information holds there.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{JointDistribution, ProxyInstance};
use crate::rng;

/// Default sample count for empirical estimation.
pub const DEFAULT_EMPIRICAL_SAMPLES: usize = 100_000;

const TAG_ENTROPY: u64 = 0x9d01_7e6a_11c9_0001;
const TAG_UNCERTAINTY: u64 = 0x9d01_7e6a_11c9_0002;

/// How estimates are computed: from the enumerated support, or from a
/// seeded sample of the given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorMode {
    Exact,
    Empirical { samples: usize, seed: u64 },
}

impl EstimatorMode {
    pub fn empirical(samples: usize, seed: u64) -> Self {
        EstimatorMode::Empirical { samples, seed }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, EstimatorMode::Exact)
    }
}

/// Which uncertainty notion a subset is scored with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorKind {
    /// `H(target | joint subset outputs)`, averaged over the output
    /// distribution.
    ConditionalEntropy,
    /// Entropy of the target under the single all-ones/all-zeros assignment
    /// induced by the subset (the reduction's construction).
    PointConditioned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorConfig {
    pub mode: EstimatorMode,
    pub kind: EstimatorKind,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            mode: EstimatorMode::Exact,
            kind: EstimatorKind::ConditionalEntropy,
        }
    }
}

impl EstimatorConfig {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn empirical(samples: usize, seed: u64) -> Self {
        EstimatorConfig {
            mode: EstimatorMode::Empirical { samples, seed },
            kind: EstimatorKind::ConditionalEntropy,
        }
    }
}

/// The scored uncertainty of one subset, with the quantities it decomposes
/// into.
#[derive(Debug, Clone)]
pub struct UncertaintyReport {
    /// Residual uncertainty of the target given the subset, in bits.
    pub value_bits: f64,
    /// Entropy of the target marginal, in bits.
    pub base_entropy_bits: f64,
    /// Information the subset carries about the target, clamped at 0 for
    /// decision logic.
    pub mutual_information_bits: f64,
    /// Unclamped mutual information, kept for diagnostics.
    pub mutual_information_raw_bits: f64,
    pub mode: EstimatorMode,
    /// Samples drawn for this evaluation; 0 in exact mode.
    pub sample_count: usize,
}

/// Shannon entropy of one attribute's marginal, in bits.
pub fn entropy(d: &JointDistribution, attr: &str, cfg: &EstimatorConfig) -> Result<f64> {
    let attr_index = d
        .schema()
        .attr_index(attr)
        .ok_or_else(|| Error::Input(format!("unknown attribute `{attr}`")))?;
    match cfg.mode {
        EstimatorMode::Exact => {
            let support = d.enumerate_support()?;
            let marginal =
                support.marginal(attr_index, d.schema().attribute(attr_index).domain_size());
            Ok(entropy_bits(&marginal, 1.0))
        }
        EstimatorMode::Empirical { samples, seed } => {
            validate_sample_count(samples)?;
            let subseed = rng::derive_seed(seed, TAG_ENTROPY, [attr_index as u64]);
            let mut sampler = d.sampler(subseed);
            let mut counts = vec![0.0f64; d.schema().attribute(attr_index).domain_size()];
            for _ in 0..samples {
                counts[sampler.draw().get(attr_index) as usize] += 1.0;
            }
            Ok(entropy_bits(&counts, samples as f64))
        }
    }
}

/// Scores a function subset with the instance's estimator. Subset indices
/// may come in any order but must be valid and duplicate-free.
pub fn uncertainty(inst: &ProxyInstance, subset: &[usize]) -> Result<UncertaintyReport> {
    let sorted = validate_subset(inst, subset)?;
    match (inst.estimator().kind, inst.estimator().mode) {
        (EstimatorKind::ConditionalEntropy, EstimatorMode::Exact) => {
            conditional_exact(inst, &sorted)
        }
        (EstimatorKind::ConditionalEntropy, EstimatorMode::Empirical { samples, seed }) => {
            conditional_empirical(inst, &sorted, samples, seed)
        }
        (EstimatorKind::PointConditioned, EstimatorMode::Exact) => point_exact(inst, &sorted),
        (EstimatorKind::PointConditioned, EstimatorMode::Empirical { samples, seed }) => {
            point_empirical(inst, &sorted, samples, seed)
        }
    }
}

/// Mutual information between the target and the subset's joint output,
/// clamped at zero (the plug-in estimate fluctuates around zero under
/// independence).
pub fn mutual_information(inst: &ProxyInstance, subset: &[usize]) -> Result<f64> {
    Ok(uncertainty(inst, subset)?.mutual_information_bits)
}

fn validate_subset(inst: &ProxyInstance, subset: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input(format!(
            "subset {subset:?} has a repeated index"
        )));
    }
    if let Some(&bad) = sorted.iter().find(|&&i| i >= inst.num_functions()) {
        return Err(Error::Input(format!(
            "function index {bad} out of range for {} functions",
            inst.num_functions()
        )));
    }
    Ok(sorted)
}

fn validate_sample_count(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::Input(
            "empirical estimation needs at least 1 sample".into(),
        ));
    }
    Ok(())
}

/// `sum -(c/total) log2(c/total)` over positive counts, with `0 log 0 = 0`.
fn entropy_bits(counts: &[f64], total: f64) -> f64 {
    let mut h = 0.0;
    for &c in counts {
        if c > 0.0 {
            let p = c / total;
            h -= p * p.log2();
        }
    }
    h
}

fn report(base: f64, value: f64, mode: EstimatorMode, sample_count: usize) -> UncertaintyReport {
    let raw = base - value;
    UncertaintyReport {
        value_bits: value,
        base_entropy_bits: base,
        mutual_information_bits: raw.max(0.0),
        mutual_information_raw_bits: raw,
        mode,
        sample_count,
    }
}

fn conditional_exact(inst: &ProxyInstance, subset: &[usize]) -> Result<UncertaintyReport> {
    let support = inst.distribution().enumerate_support()?;
    let target = inst.target();
    let target_size = inst.schema().attribute(target).domain_size();

    let mut target_marginal = vec![0.0f64; target_size];
    // Joint output key -> target histogram, materialized sparsely from the
    // support. BTreeMap keeps accumulation order deterministic.
    let mut groups: BTreeMap<Vec<u32>, Vec<f64>> = BTreeMap::new();
    for (assignment, p) in support.rows() {
        target_marginal[assignment.get(target) as usize] += p;
        let key: Vec<u32> = subset
            .iter()
            .map(|&f| inst.function(f).evaluate(assignment))
            .collect();
        let hist = groups.entry(key).or_insert_with(|| vec![0.0; target_size]);
        hist[assignment.get(target) as usize] += p;
    }

    let base = entropy_bits(&target_marginal, 1.0);
    let mut value = 0.0;
    for hist in groups.values() {
        let p_key: f64 = hist.iter().sum();
        for &p in hist {
            if p > 0.0 {
                value += p * (p_key / p).log2();
            }
        }
    }
    Ok(report(base, value, EstimatorMode::Exact, 0))
}

fn conditional_empirical(
    inst: &ProxyInstance,
    subset: &[usize],
    samples: usize,
    seed: u64,
) -> Result<UncertaintyReport> {
    validate_sample_count(samples)?;
    let target = inst.target();
    let target_size = inst.schema().attribute(target).domain_size();
    let subseed = rng::derive_seed(seed, TAG_UNCERTAINTY, subset.iter().map(|&i| i as u64));
    let mut sampler = inst.distribution().sampler(subseed);

    let mut target_counts = vec![0.0f64; target_size];
    // Joint (outputs, target) codes; counted by sorting rather than hashing
    // so iteration order is fixed.
    let mut codes: Vec<Vec<u32>> = Vec::with_capacity(samples);
    for _ in 0..samples {
        let assignment = sampler.draw();
        target_counts[assignment.get(target) as usize] += 1.0;
        let mut code: Vec<u32> = subset
            .iter()
            .map(|&f| inst.function(f).evaluate(&assignment))
            .collect();
        code.push(assignment.get(target));
        codes.push(code);
    }
    codes.sort_unstable();

    let n = samples as f64;
    let base = entropy_bits(&target_counts, n);
    let mut value = 0.0;
    let mut i = 0;
    while i < codes.len() {
        // One group = one joint-output key (code minus the trailing target).
        let key_len = codes[i].len() - 1;
        let mut j = i;
        while j < codes.len() && codes[j][..key_len] == codes[i][..key_len] {
            j += 1;
        }
        let c_key = (j - i) as f64;
        let mut t = i;
        while t < j {
            let mut u = t;
            while u < j && codes[u][key_len] == codes[t][key_len] {
                u += 1;
            }
            let c_kt = (u - t) as f64;
            value += (c_kt / n) * (c_key / c_kt).log2();
            t = u;
        }
        i = j;
    }
    Ok(report(
        base,
        value,
        EstimatorMode::Empirical { samples, seed },
        samples,
    ))
}

/// The single conditioning assignment over non-target attributes: input
/// attributes of subset functions at value index 1, everything else at 0.
fn point_prefix(inst: &ProxyInstance, subset: &[usize]) -> Result<Vec<u32>> {
    let target = inst.target();
    let mut point = vec![0u32; inst.schema().len()];
    for &f in subset {
        for &attr in inst.function(f).inputs() {
            if attr == target {
                return Err(Error::Input(format!(
                    "point-conditioned estimator cannot condition on the target (function `{}` reads it)",
                    inst.function(f).name()
                )));
            }
            point[attr] = 1;
        }
    }
    point.remove(target);
    Ok(point)
}

fn point_exact(inst: &ProxyInstance, subset: &[usize]) -> Result<UncertaintyReport> {
    let support = inst.distribution().enumerate_support()?;
    let target = inst.target();
    let target_size = inst.schema().attribute(target).domain_size();
    let base = entropy_bits(&support.marginal(target, target_size), 1.0);

    let point = point_prefix(inst, subset)?;
    let last = inst.schema().len() - 1;
    let mut hist = vec![0.0f64; target_size];
    if target == last {
        // Conditioned attributes form a canonical-order prefix: binary search.
        for (assignment, p) in support.rows_matching_prefix(&point) {
            hist[assignment.get(target) as usize] += p;
        }
    } else {
        for (assignment, p) in support.rows() {
            let matches = assignment
                .values()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != target)
                .map(|(_, &v)| v)
                .eq(point.iter().copied());
            if matches {
                hist[assignment.get(target) as usize] += p;
            }
        }
    }
    let total: f64 = hist.iter().sum();
    if total <= 0.0 {
        return Err(Error::Estimation(
            "point-conditioning event has probability zero".into(),
        ));
    }
    Ok(report(
        base,
        entropy_bits(&hist, total),
        EstimatorMode::Exact,
        0,
    ))
}

fn point_empirical(
    inst: &ProxyInstance,
    subset: &[usize],
    samples: usize,
    seed: u64,
) -> Result<UncertaintyReport> {
    validate_sample_count(samples)?;
    let target = inst.target();
    let target_size = inst.schema().attribute(target).domain_size();
    let point = point_prefix(inst, subset)?;
    let subseed = rng::derive_seed(seed, TAG_UNCERTAINTY, subset.iter().map(|&i| i as u64));
    let mut sampler = inst.distribution().sampler(subseed);

    let mut target_counts = vec![0.0f64; target_size];
    let mut hist = vec![0.0f64; target_size];
    for _ in 0..samples {
        let assignment = sampler.draw();
        target_counts[assignment.get(target) as usize] += 1.0;
        let matches = assignment
            .values()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != target)
            .map(|(_, &v)| v)
            .eq(point.iter().copied());
        if matches {
            hist[assignment.get(target) as usize] += 1.0;
        }
    }
    let survivors: f64 = hist.iter().sum();
    if survivors <= 0.0 {
        return Err(Error::Estimation(format!(
            "no samples matched the point-conditioning event ({samples} drawn)"
        )));
    }
    let base = entropy_bits(&target_counts, samples as f64);
    Ok(report(
        base,
        entropy_bits(&hist, survivors),
        EstimatorMode::Empirical { samples, seed },
        samples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AttributeSchema, FunctionDef, JointDistribution};

    fn uniform_binary() -> JointDistribution {
        let schema = AttributeSchema::new(vec![("a1", vec!["0", "1"])]).unwrap();
        JointDistribution::product(schema, vec![vec![0.5, 0.5]]).unwrap()
    }

    fn biased_binary(p: f64) -> JointDistribution {
        let schema = AttributeSchema::new(vec![("a1", vec!["0", "1"])]).unwrap();
        JointDistribution::product(schema, vec![vec![1.0 - p, p]]).unwrap()
    }

    /// Copy instance: a2 duplicates a1, target a2, one projection of a1.
    fn copy_instance(cfg: EstimatorConfig) -> ProxyInstance {
        let schema =
            AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
        let rows = vec![
            (schema.assignment(vec![0, 0]).unwrap(), 0.5),
            (schema.assignment(vec![1, 1]).unwrap(), 0.5),
        ];
        let d = JointDistribution::tabular(schema, rows).unwrap();
        let f = FunctionDef::projection(d.schema(), "f0", "a1").unwrap();
        ProxyInstance::new(d, vec![f], "a2", 0.0, None, cfg).unwrap()
    }

    #[test]
    fn uniform_binary_entropy_is_one_bit() {
        let h = entropy(&uniform_binary(), "a1", &EstimatorConfig::exact()).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_mass_entropy_is_zero() {
        let schema = AttributeSchema::new(vec![("a1", vec!["0", "1"])]).unwrap();
        let a = schema.assignment(vec![0]).unwrap();
        let d = JointDistribution::tabular(schema, vec![(a, 1.0)]).unwrap();
        let h = entropy(&d, "a1", &EstimatorConfig::exact()).unwrap();
        assert_eq!(h, 0.0);
    }

    #[test]
    fn biased_binary_entropy_matches_formula() {
        // Oracle: direct evaluation of -p log2 p - (1-p) log2 (1-p).
        let p: f64 = 0.25;
        let expected = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((expected - 0.811278).abs() < 1e-6);
        let h = entropy(&biased_binary(p), "a1", &EstimatorConfig::exact()).unwrap();
        assert!((h - expected).abs() < 1e-12);
    }

    #[test]
    fn empirical_entropy_close_to_exact() {
        let d = biased_binary(0.25);
        let exact = entropy(&d, "a1", &EstimatorConfig::exact()).unwrap();
        let cfg = EstimatorConfig::empirical(100_000, 13);
        let emp = entropy(&d, "a1", &cfg).unwrap();
        assert!((exact - emp).abs() < 0.02);
    }

    #[test]
    fn copy_target_is_determined_by_projection() {
        let inst = copy_instance(EstimatorConfig::exact());
        let with = inst.uncertainty(&[0]).unwrap();
        assert!(with.value_bits.abs() < 1e-12);
        assert!((with.mutual_information_bits - 1.0).abs() < 1e-12);
        let without = inst.uncertainty(&[]).unwrap();
        assert!((without.value_bits - 1.0).abs() < 1e-12);
        assert_eq!(without.sample_count, 0);
    }

    #[test]
    fn subset_with_duplicates_is_rejected() {
        let inst = copy_instance(EstimatorConfig::exact());
        assert!(matches!(inst.uncertainty(&[0, 0]), Err(Error::Input(_))));
        assert!(matches!(inst.uncertainty(&[3]), Err(Error::Input(_))));
    }

    #[test]
    fn chain_rule_holds_exactly() {
        let inst = copy_instance(EstimatorConfig::exact());
        for subset in [vec![], vec![0]] {
            let r = inst.uncertainty(&subset).unwrap();
            assert!((r.value_bits + r.mutual_information_bits - r.base_entropy_bits).abs() < 1e-9);
        }
    }

    #[test]
    fn empirical_is_deterministic_and_order_independent() {
        let inst = copy_instance(EstimatorConfig::empirical(5_000, 3));
        let a = inst.uncertainty(&[0]).unwrap();
        let b = inst.uncertainty(&[0]).unwrap();
        assert_eq!(a.value_bits.to_bits(), b.value_bits.to_bits());
        assert_eq!(a.sample_count, 5_000);
    }

    #[test]
    fn independent_function_has_zero_mi() {
        // a1 and a2 independent uniform; F = {proj a1}; target a2.
        let schema =
            AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
        let d = JointDistribution::product(schema, vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let f = FunctionDef::projection(d.schema(), "f0", "a1").unwrap();
        let inst =
            ProxyInstance::new(d, vec![f], "a2", 0.0, None, EstimatorConfig::exact()).unwrap();
        let r = inst.uncertainty(&[0]).unwrap();
        assert!(r.mutual_information_bits.abs() < 1e-12);
        assert!((r.value_bits - 1.0).abs() < 1e-12);
    }
}
