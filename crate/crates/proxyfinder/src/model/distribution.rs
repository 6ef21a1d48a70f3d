use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::model::schema::{Assignment, AttributeSchema, SchemaRef};
use crate::reductions::Graph;
use crate::rng::SplitMix64;

/// Probabilities must sum to 1 within this tolerance at construction;
/// hand-authored scenario files carry rounding, so inputs are normalized
/// after the check.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Cap on the joint state space for tabular construction and exact
/// enumeration.
pub const DEFAULT_STATE_CAP: u128 = 1 << 24;

#[derive(Debug, Clone)]
enum DistributionKind {
    /// Explicit positive-probability rows, canonically sorted, with a
    /// cumulative table for inverse-CDF sampling.
    Tabular {
        rows: Arc<[(Assignment, f64)]>,
        cdf: Vec<f64>,
    },
    /// Independent attributes, one categorical marginal each (schema order).
    Product { marginals: Vec<Vec<f64>> },
    /// Closed-form distribution of the vertex-cover reduction: vertex
    /// indicator attributes i.i.d. uniform, last attribute forced to 1 when
    /// the indicated set covers every edge, uniform otherwise.
    VcReduction { graph: Graph },
}

/// A joint distribution over a schema's product domain. Immutable after
/// validated construction; sampling state lives in [`Sampler`] values owned
/// by each caller.
#[derive(Debug, Clone)]
pub struct JointDistribution {
    schema: SchemaRef,
    kind: DistributionKind,
    state_cap: u128,
    support: Arc<OnceLock<SupportTable>>,
}

impl JointDistribution {
    /// Tabular distribution from explicit `(assignment, probability)` rows.
    pub fn tabular(schema: AttributeSchema, entries: Vec<(Assignment, f64)>) -> Result<Self> {
        Self::tabular_with_cap(schema, entries, DEFAULT_STATE_CAP)
    }

    pub fn tabular_with_cap(
        schema: AttributeSchema,
        mut entries: Vec<(Assignment, f64)>,
        state_cap: u128,
    ) -> Result<Self> {
        if schema.num_states() > state_cap {
            return Err(Error::Distribution(format!(
                "product domain has {} states, above the tabular cap of {state_cap}",
                schema.num_states()
            )));
        }
        let mut total = 0.0;
        for (assignment, p) in &entries {
            if assignment.len() != schema.len() {
                return Err(Error::Distribution(format!(
                    "entry {assignment} does not cover all {} attributes",
                    schema.len()
                )));
            }
            for (i, &v) in assignment.values().iter().enumerate() {
                if (v as usize) >= schema.attribute(i).domain_size() {
                    return Err(Error::Distribution(format!(
                        "entry {assignment} has out-of-domain value for attribute `{}`",
                        schema.attribute(i).name()
                    )));
                }
            }
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::Distribution(format!(
                    "entry {assignment} has invalid probability {p}"
                )));
            }
            total += p;
        }
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Distribution(format!(
                "probabilities sum to {total}, expected 1 within {NORMALIZATION_TOLERANCE}"
            )));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Distribution(format!(
                    "duplicate assignment {}",
                    pair[0].0
                )));
            }
        }
        // Normalize away input rounding and drop zero-probability rows so the
        // stored support is exactly the positive-probability assignments.
        let rows: Vec<(Assignment, f64)> = entries
            .into_iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(a, p)| (a, p / total))
            .collect();
        if rows.is_empty() {
            return Err(Error::Distribution("distribution has empty support".into()));
        }
        let mut cdf = Vec::with_capacity(rows.len());
        let mut acc = 0.0;
        for (_, p) in &rows {
            acc += p;
            cdf.push(acc);
        }
        *cdf.last_mut().unwrap() = 1.0;
        Ok(JointDistribution {
            schema: Arc::new(schema),
            kind: DistributionKind::Tabular {
                rows: rows.into(),
                cdf,
            },
            state_cap,
            support: Arc::new(OnceLock::new()),
        })
    }

    /// Product of independent categorical marginals, given in schema order.
    pub fn product(schema: AttributeSchema, marginals: Vec<Vec<f64>>) -> Result<Self> {
        if marginals.len() != schema.len() {
            return Err(Error::Distribution(format!(
                "{} marginals for {} attributes",
                marginals.len(),
                schema.len()
            )));
        }
        let mut normalized = Vec::with_capacity(marginals.len());
        for (i, marginal) in marginals.into_iter().enumerate() {
            let attr = schema.attribute(i);
            if marginal.len() != attr.domain_size() {
                return Err(Error::Distribution(format!(
                    "marginal for `{}` has {} probabilities, domain has {}",
                    attr.name(),
                    marginal.len(),
                    attr.domain_size()
                )));
            }
            if marginal.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::Distribution(format!(
                    "marginal for `{}` has invalid probability",
                    attr.name()
                )));
            }
            let total: f64 = marginal.iter().sum();
            if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(Error::Distribution(format!(
                    "marginal for `{}` sums to {total}, expected 1 within {NORMALIZATION_TOLERANCE}",
                    attr.name()
                )));
            }
            normalized.push(marginal.into_iter().map(|p| p / total).collect());
        }
        Ok(JointDistribution {
            schema: Arc::new(schema),
            kind: DistributionKind::Product {
                marginals: normalized,
            },
            state_cap: DEFAULT_STATE_CAP,
            support: Arc::new(OnceLock::new()),
        })
    }

    /// The vertex-cover reduction distribution for a graph. Builds its own
    /// schema: one binary indicator per vertex (`v0`..) plus the binary
    /// `target` attribute, in that order.
    pub fn vc_reduction(graph: Graph) -> Result<Self> {
        let mut attrs: Vec<(String, Vec<String>)> = (0..graph.num_vertices())
            .map(|i| (format!("v{i}"), vec!["0".to_string(), "1".to_string()]))
            .collect();
        attrs.push(("target".to_string(), vec!["0".to_string(), "1".to_string()]));
        let schema = AttributeSchema::new(attrs)?;
        Ok(JointDistribution {
            schema: Arc::new(schema),
            kind: DistributionKind::VcReduction { graph },
            state_cap: DEFAULT_STATE_CAP,
            support: Arc::new(OnceLock::new()),
        })
    }

    pub fn schema(&self) -> &AttributeSchema {
        &self.schema
    }

    pub fn schema_ref(&self) -> &SchemaRef {
        &self.schema
    }

    /// The reduction graph, when this is a vc-reduction distribution.
    pub fn vc_graph(&self) -> Option<&Graph> {
        match &self.kind {
            DistributionKind::VcReduction { graph } => Some(graph),
            _ => None,
        }
    }

    pub fn is_tabular(&self) -> bool {
        matches!(self.kind, DistributionKind::Tabular { .. })
    }

    /// Whether exact enumeration is available (closed form within the cap).
    pub fn is_enumerable(&self) -> bool {
        match &self.kind {
            DistributionKind::Tabular { .. } => true,
            DistributionKind::Product { .. } => self.schema.num_states() <= self.state_cap,
            DistributionKind::VcReduction { .. } => self.schema.num_states() <= self.state_cap,
        }
    }

    /// A fresh sampler owned by the caller. Equal seeds yield identical
    /// sample sequences.
    pub fn sampler(&self, seed: u64) -> Sampler<'_> {
        Sampler {
            dist: self,
            rng: SplitMix64::new(seed),
        }
    }

    /// Draws `n` i.i.d. assignments. Deterministic for fixed `(n, seed)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<Assignment>> {
        if n == 0 {
            return Err(Error::Input("sample count must be at least 1".into()));
        }
        let mut sampler = self.sampler(seed);
        Ok((0..n).map(|_| sampler.draw()).collect())
    }

    /// Every positive-probability assignment exactly once, canonically
    /// sorted, probabilities summing to 1 within 1e-9. Cached after the
    /// first call.
    pub fn enumerate_support(&self) -> Result<&SupportTable> {
        if let Some(table) = self.support.get() {
            return Ok(table);
        }
        let table = self.build_support()?;
        Ok(self.support.get_or_init(|| table))
    }

    fn build_support(&self) -> Result<SupportTable> {
        match &self.kind {
            DistributionKind::Tabular { rows, .. } => {
                Ok(SupportTable::new(rows.to_vec(), self.schema.len()))
            }
            DistributionKind::Product { marginals } => {
                if self.schema.num_states() > self.state_cap {
                    return Err(Error::UnsupportedExact(format!(
                        "product domain has {} states, above the enumeration cap of {}",
                        self.schema.num_states(),
                        self.state_cap
                    )));
                }
                let mut rows = Vec::new();
                for assignment in self.schema.states() {
                    let p: f64 = assignment
                        .values()
                        .iter()
                        .zip(marginals)
                        .map(|(&v, marginal)| marginal[v as usize])
                        .product();
                    if p > 0.0 {
                        rows.push((assignment, p));
                    }
                }
                Ok(SupportTable::new(rows, self.schema.len()))
            }
            DistributionKind::VcReduction { graph } => {
                if self.schema.num_states() > self.state_cap {
                    return Err(Error::UnsupportedExact(format!(
                        "reduction state space has {} states, above the enumeration cap of {}",
                        self.schema.num_states(),
                        self.state_cap
                    )));
                }
                let n = graph.num_vertices();
                let p_bits = 0.5f64.powi(n as i32);
                let mut rows = Vec::new();
                // Vertex assignments in canonical order: v0 most significant.
                for rank in 0..(1u64 << n) {
                    let mut values: Vec<u32> =
                        (0..n).map(|i| ((rank >> (n - 1 - i)) & 1) as u32).collect();
                    let mask = (0..n)
                        .filter(|&i| values[i] == 1)
                        .fold(0u64, |m, i| m | (1 << i));
                    if graph.is_cover_mask(mask) {
                        values.push(1);
                        rows.push((Assignment::new_unchecked(values), p_bits));
                    } else {
                        let mut zero = values.clone();
                        zero.push(0);
                        values.push(1);
                        rows.push((Assignment::new_unchecked(zero), p_bits * 0.5));
                        rows.push((Assignment::new_unchecked(values), p_bits * 0.5));
                    }
                }
                Ok(SupportTable::new(rows, self.schema.len()))
            }
        }
    }
}

/// One sample stream over a distribution. Stateful; each solver run owns its
/// own instance.
pub struct Sampler<'a> {
    dist: &'a JointDistribution,
    rng: SplitMix64,
}

impl Sampler<'_> {
    pub fn draw(&mut self) -> Assignment {
        match &self.dist.kind {
            DistributionKind::Tabular { rows, cdf } => {
                let u = self.rng.next_f64();
                let idx = cdf.partition_point(|&c| c <= u);
                rows[idx.min(rows.len() - 1)].0.clone()
            }
            DistributionKind::Product { marginals } => {
                let values = marginals
                    .iter()
                    .map(|marginal| {
                        let u = self.rng.next_f64();
                        let mut acc = 0.0;
                        for (v, &p) in marginal.iter().enumerate() {
                            acc += p;
                            if u < acc {
                                return v as u32;
                            }
                        }
                        (marginal.len() - 1) as u32
                    })
                    .collect();
                Assignment::new_unchecked(values)
            }
            DistributionKind::VcReduction { graph } => {
                let n = graph.num_vertices();
                let mut values: Vec<u32> = Vec::with_capacity(n + 1);
                let mut mask = 0u64;
                for i in 0..n {
                    let bit = if self.rng.next_f64() < 0.5 {
                        0u32
                    } else {
                        1u32
                    };
                    if bit == 1 {
                        mask |= 1 << i;
                    }
                    values.push(bit);
                }
                let target = if graph.is_cover_mask(mask) {
                    1
                } else if self.rng.next_f64() < 0.5 {
                    0
                } else {
                    1
                };
                values.push(target);
                Assignment::new_unchecked(values)
            }
        }
    }
}

/// The enumerated support of a distribution: positive-probability rows in
/// canonical assignment order.
#[derive(Debug, Clone)]
pub struct SupportTable {
    rows: Vec<(Assignment, f64)>,
    num_attrs: usize,
}

impl SupportTable {
    fn new(rows: Vec<(Assignment, f64)>, num_attrs: usize) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
        SupportTable { rows, num_attrs }
    }

    pub fn rows(&self) -> &[(Assignment, f64)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Marginal probability vector of one attribute.
    pub fn marginal(&self, attr_index: usize, domain_size: usize) -> Vec<f64> {
        let mut out = vec![0.0; domain_size];
        for (assignment, p) in &self.rows {
            out[assignment.get(attr_index) as usize] += p;
        }
        out
    }

    /// Rows whose values match `point` on every attribute except the last
    /// one. Efficient when the conditioned attributes form a prefix of the
    /// canonical order, which holds when the free attribute is last.
    pub(crate) fn rows_matching_prefix(&self, prefix: &[u32]) -> &[(Assignment, f64)] {
        debug_assert_eq!(prefix.len(), self.num_attrs - 1);
        let start = self
            .rows
            .partition_point(|(a, _)| &a.values()[..prefix.len()] < prefix);
        let end = self.rows[start..]
            .partition_point(|(a, _)| &a.values()[..prefix.len()] == prefix)
            + start;
        &self.rows[start..end]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_pair() -> JointDistribution {
        let schema =
            AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
        let entries = schema.states().map(|a| (a, 0.25)).collect();
        JointDistribution::tabular(schema, entries).unwrap()
    }

    #[test]
    fn tabular_rejects_unnormalized() {
        let schema =
            AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
        let entries: Vec<_> = schema.states().map(|a| (a, 0.3)).collect();
        assert!(matches!(
            JointDistribution::tabular(schema, entries),
            Err(Error::Distribution(_))
        ));
    }

    #[test]
    fn tabular_rejects_duplicates() {
        let schema =
            AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["0", "1"])]).unwrap();
        let a = schema.assignment(vec![0, 0]).unwrap();
        let entries = vec![(a.clone(), 0.5), (a, 0.5)];
        assert!(matches!(
            JointDistribution::tabular(schema, entries),
            Err(Error::Distribution(_))
        ));
    }

    #[test]
    fn point_mass_sampling_is_constant() {
        let schema = AttributeSchema::new(vec![("a1", vec!["0", "1"])]).unwrap();
        let a = schema.assignment(vec![0]).unwrap();
        let d = JointDistribution::tabular(schema, vec![(a.clone(), 1.0)]).unwrap();
        let samples = d.sample(3, 99).unwrap();
        assert_eq!(samples, vec![a.clone(), a.clone(), a]);
        let support = d.enumerate_support().unwrap();
        assert_eq!(support.len(), 1);
        assert_eq!(support.rows()[0].1, 1.0);
    }

    #[test]
    fn uniform_support_has_four_quarter_rows() {
        let d = uniform_pair();
        let support = d.enumerate_support().unwrap();
        assert_eq!(support.len(), 4);
        for (_, p) in support.rows() {
            assert!((p - 0.25).abs() < 1e-12);
        }
        let total: f64 = support.rows().iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn same_seed_same_samples() {
        let d = uniform_pair();
        assert_eq!(d.sample(200, 5).unwrap(), d.sample(200, 5).unwrap());
        assert_ne!(d.sample(200, 5).unwrap(), d.sample(200, 6).unwrap());
    }

    #[test]
    fn empirical_frequency_tracks_probability() {
        let schema = AttributeSchema::new(vec![("a1", vec!["0", "1"])]).unwrap();
        let d = JointDistribution::product(schema, vec![vec![0.5, 0.5]]).unwrap();
        let samples = d.sample(100_000, 31).unwrap();
        let ones = samples.iter().filter(|a| a.get(0) == 1).count() as f64;
        assert!((ones / 100_000.0 - 0.5).abs() < 0.01);
    }

    #[test]
    fn product_support_enumerates_independent_grid() {
        let schema =
            AttributeSchema::new(vec![("a1", vec!["0", "1"]), ("a2", vec!["x", "y", "z"])])
                .unwrap();
        let d =
            JointDistribution::product(schema, vec![vec![0.5, 0.5], vec![0.2, 0.3, 0.5]]).unwrap();
        let support = d.enumerate_support().unwrap();
        assert_eq!(support.len(), 6);
        let total: f64 = support.rows().iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-9);
        let marginal = support.marginal(1, 3);
        assert!((marginal[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sampling_matches_enumeration_frequencies() {
        let d = uniform_pair();
        let samples = d.sample(100_000, 17).unwrap();
        let support = d.enumerate_support().unwrap();
        for (assignment, p) in support.rows() {
            let count = samples.iter().filter(|s| *s == assignment).count() as f64;
            assert!((count / 100_000.0 - p).abs() < 0.01);
        }
    }
}
