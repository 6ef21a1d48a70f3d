//! Small, fully enumerable instances used throughout the examples, tests,
//! and benchmarks. Each one is built by hand so its information structure
//! can be checked against a four- or eight-row table on paper.

use crate::estimation::EstimatorConfig;
use crate::model::{Assignment, AttributeSchema, FunctionDef, JointDistribution, ProxyInstance};

fn uniform_rows(schema: &AttributeSchema, rows: &[&[u32]]) -> Vec<(Assignment, f64)> {
    let p = 1.0 / rows.len() as f64;
    rows.iter()
        .map(|values| (schema.assignment(values.to_vec()).unwrap(), p))
        .collect()
}

/// `a2` is a copy of `a1`, both uniform. One function: the projection of
/// `a1`. Target `a2`, threshold 0. The projection pins the target down
/// exactly, so the minimum witness is the singleton.
pub fn copy_pair() -> ProxyInstance {
    let schema =
        AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
    let rows = uniform_rows(&schema, &[&[0, 0], &[1, 1]]);
    let d = JointDistribution::tabular(schema, rows).unwrap();
    let f = FunctionDef::projection(d.schema(), "copy_reader", "a1").unwrap();
    ProxyInstance::new(d, vec![f], "a2", 0.0, None, EstimatorConfig::exact()).unwrap()
}

/// `a1` and `a2` independent uniform; one function projects `a1`, the
/// target is `a2`. The function carries no information at all.
pub fn independent_pair() -> ProxyInstance {
    let schema =
        AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
    let d = JointDistribution::product(schema, vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
    let f = FunctionDef::projection(d.schema(), "decoy_reader", "a1").unwrap();
    ProxyInstance::new(d, vec![f], "a2", 0.0, None, EstimatorConfig::exact()).unwrap()
}

/// `a3 = a1 XOR a2` with `a1`, `a2` independent uniform. Functions project
/// `a1` and `a2`; target `a3`, threshold 0. Each projection alone has zero
/// mutual information with the target, yet the pair determines it exactly —
/// the canonical non-monotone-gain instance.
pub fn xor_triple() -> ProxyInstance {
    let schema = AttributeSchema::new(vec![
        ("a1", vec!["0", "1"]),
        ("a2", vec!["0", "1"]),
        ("a3", vec!["0", "1"]),
    ])
    .unwrap();
    let rows = uniform_rows(&schema, &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
    let d = JointDistribution::tabular(schema, rows).unwrap();
    let f1 = FunctionDef::projection(d.schema(), "read_a1", "a1").unwrap();
    let f2 = FunctionDef::projection(d.schema(), "read_a2", "a2").unwrap();
    ProxyInstance::new(d, vec![f1, f2], "a3", 0.0, None, EstimatorConfig::exact()).unwrap()
}

/// The XOR instance plus a fourth independent uniform attribute `a4` and a
/// third function projecting it. All three singleton mutual informations
/// are zero, so the greedy first pick is decided purely by the tie-break
/// rule.
pub fn xor_with_decoy() -> ProxyInstance {
    let schema = AttributeSchema::new(vec![
        ("a1", vec!["0", "1"]),
        ("a2", vec!["0", "1"]),
        ("a3", vec!["0", "1"]),
        ("a4", vec!["0", "1"]),
    ])
    .unwrap();
    let rows = uniform_rows(
        &schema,
        &[
            &[0, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 1, 1, 0],
            &[0, 1, 1, 1],
            &[1, 0, 1, 0],
            &[1, 0, 1, 1],
            &[1, 1, 0, 0],
            &[1, 1, 0, 1],
        ],
    );
    let d = JointDistribution::tabular(schema, rows).unwrap();
    let f1 = FunctionDef::projection(d.schema(), "read_a1", "a1").unwrap();
    let f2 = FunctionDef::projection(d.schema(), "read_a2", "a2").unwrap();
    let f3 = FunctionDef::projection(d.schema(), "read_decoy", "a4").unwrap();
    ProxyInstance::new(
        d,
        vec![f1, f2, f3],
        "a3",
        0.0,
        None,
        EstimatorConfig::exact(),
    )
    .unwrap()
}

/// A single biased binary attribute (no functions); handy for entropy
/// checks.
pub fn biased_binary(p_one: f64) -> JointDistribution {
    let schema = AttributeSchema::new(vec![("a1", vec!["0", "1"])]).unwrap();
    JointDistribution::product(schema, vec![vec![1.0 - p_one, p_one]]).unwrap()
}

/// A degenerate point-mass distribution on one binary attribute.
pub fn point_mass() -> JointDistribution {
    let schema = AttributeSchema::new(vec![("a1", vec!["0", "1"])]).unwrap();
    let a = schema.assignment(vec![0]).unwrap();
    JointDistribution::tabular(schema, vec![(a, 1.0)]).unwrap()
}

/// Two independent uniform binary attributes as a product distribution.
pub fn uniform_binary_pair() -> JointDistribution {
    let schema =
        AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
    JointDistribution::product(schema, vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_singletons_carry_nothing_the_pair_everything() {
        let inst = xor_triple();
        assert!(inst.mutual_information(&[0]).unwrap().abs() < 1e-12);
        assert!(inst.mutual_information(&[1]).unwrap().abs() < 1e-12);
        assert!((inst.mutual_information(&[0, 1]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn all_fixtures_validate_and_enumerate() {
        for d in [biased_binary(0.25), point_mass(), uniform_binary_pair()] {
            let total: f64 = d
                .enumerate_support()
                .unwrap()
                .rows()
                .iter()
                .map(|(_, p)| p)
                .sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
        for inst in [
            copy_pair(),
            independent_pair(),
            xor_triple(),
            xor_with_decoy(),
        ] {
            let total: f64 = inst
                .distribution()
                .enumerate_support()
                .unwrap()
                .rows()
                .iter()
                .map(|(_, p)| p)
                .sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }
}
