//! Machine-readable report envelopes written by the CLI. The schema is
//! fixed and versioned; reports carry no timestamps, so equal runs produce
//! byte-identical files.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::estimation::{EstimatorMode, UncertaintyReport};
use crate::scenario_io::EstimatorSpec;
use crate::solvers::{ComparisonReport, SolveResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub format_version: u32,
    pub command: String,
    pub mode: String,
    pub source: String,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub estimator: EstimatorSpec,
    pub subset_names: Vec<String>,
    #[serde(flatten)]
    pub result: SolveResult,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    pub format_version: u32,
    pub command: String,
    pub sources: Vec<String>,
    #[serde(flatten)]
    pub comparison: ComparisonReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub format_version: u32,
    pub command: String,
    pub source: String,
    pub subset: Vec<usize>,
    pub subset_names: Vec<String>,
    pub value_bits: f64,
    pub base_entropy_bits: f64,
    pub mutual_information_bits: f64,
    pub mutual_information_raw_bits: f64,
    pub mode: String,
    pub sample_count: usize,
}

impl EstimateReport {
    pub fn new(
        source: String,
        subset: Vec<usize>,
        names: Vec<String>,
        r: &UncertaintyReport,
    ) -> Self {
        EstimateReport {
            format_version: FORMAT_VERSION,
            command: "estimate".to_string(),
            source,
            subset,
            subset_names: names,
            value_bits: r.value_bits,
            base_entropy_bits: r.base_entropy_bits,
            mutual_information_bits: r.mutual_information_bits,
            mutual_information_raw_bits: r.mutual_information_raw_bits,
            mode: match r.mode {
                EstimatorMode::Exact => "exact".to_string(),
                EstimatorMode::Empirical { .. } => "empirical".to_string(),
            },
            sample_count: r.sample_count,
        }
    }
}

/// Canonical serialization: pretty JSON plus trailing newline.
pub fn to_json_string<T: Serialize>(report: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::SolveMethod;

    #[test]
    fn solve_report_serializes_flat() {
        let report = SolveReport {
            format_version: FORMAT_VERSION,
            command: "solve".into(),
            mode: "exact".into(),
            source: "x.json".into(),
            alpha: 0.5,
            k: None,
            estimator: EstimatorSpec {
                mode: "exact".into(),
                samples: None,
                seed: None,
                kind: None,
            },
            subset_names: vec!["f0".into()],
            result: SolveResult {
                feasible: true,
                subset: vec![0],
                achieved_uncertainty_bits: 0.0,
                estimator_calls: 3,
                method: SolveMethod::Exact,
                trace: vec![],
            },
        };
        let s = to_json_string(&report).unwrap();
        assert!(s.contains("\"feasible\": true"));
        assert!(s.contains("\"format_version\": 1"));
        assert!(s.ends_with('\n'));
        let back: SolveReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.result.subset, vec![0]);
    }
}
