//! JSON scenario files: the on-disk interchange format for instances.
//!
//! Top-level keys: `schema` (list of `{name, domain}`), `distribution`
//! (`table`, `product`, or `vc_reduction`), `functions`, `target`, `alpha`,
//! optional `k`, optional `estimator`. All labels are strings; vertex and
//! function indices are 0-based. Exports are canonical (sorted, pretty,
//! trailing newline) so equal instances serialize byte-identically.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{EstimatorConfig, EstimatorKind, EstimatorMode, DEFAULT_EMPIRICAL_SAMPLES};
use crate::model::{
    Assignment, AttributeSchema, FunctionBody, FunctionDef, JointDistribution, ProxyInstance,
};
use crate::reductions::Graph;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub schema: Vec<AttrSpec>,
    pub distribution: DistSpec,
    pub functions: Vec<FunctionSpec>,
    pub target: String,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimator: Option<EstimatorSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttrSpec {
    pub name: String,
    pub domain: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DistSpec {
    #[serde(rename = "table")]
    Table { entries: Vec<TableEntry> },
    #[serde(rename = "product")]
    Product {
        marginals: BTreeMap<String, Vec<f64>>,
    },
    #[serde(rename = "vc_reduction")]
    VcReduction {
        edges: Vec<(u32, u32)>,
        num_vertices: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub values: Vec<String>,
    pub p: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub name: String,
    pub inputs: Vec<String>,
    pub output_domain: Vec<String>,
    pub body: BodySpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BodySpec {
    #[serde(rename = "projection")]
    Projection,
    #[serde(rename = "table")]
    Table { map: Vec<MapRow> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapRow {
    #[serde(rename = "in")]
    pub input: Vec<String>,
    pub out: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimatorSpec {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

impl EstimatorSpec {
    pub fn from_config(cfg: &EstimatorConfig) -> Self {
        let (mode, samples, seed) = match cfg.mode {
            EstimatorMode::Exact => ("exact".to_string(), None, None),
            EstimatorMode::Empirical { samples, seed } => {
                ("empirical".to_string(), Some(samples), Some(seed))
            }
        };
        let kind = match cfg.kind {
            EstimatorKind::ConditionalEntropy => None,
            EstimatorKind::PointConditioned => Some("point_conditioned".to_string()),
        };
        EstimatorSpec {
            mode,
            samples,
            seed,
            kind,
        }
    }

    pub fn to_config(&self) -> Result<EstimatorConfig> {
        let mode = match self.mode.as_str() {
            "exact" => EstimatorMode::Exact,
            "empirical" => EstimatorMode::Empirical {
                samples: self.samples.unwrap_or(DEFAULT_EMPIRICAL_SAMPLES),
                seed: self.seed.unwrap_or(0),
            },
            other => {
                return Err(Error::ScenarioFile(format!(
                    "unknown estimator mode `{other}`"
                )))
            }
        };
        let kind = match self.kind.as_deref() {
            None | Some("conditional_entropy") => EstimatorKind::ConditionalEntropy,
            Some("point_conditioned") => EstimatorKind::PointConditioned,
            Some(other) => {
                return Err(Error::ScenarioFile(format!(
                    "unknown estimator kind `{other}`"
                )))
            }
        };
        Ok(EstimatorConfig { mode, kind })
    }
}

impl ScenarioFile {
    pub fn from_instance(inst: &ProxyInstance) -> Result<Self> {
        let schema = inst.schema();
        let attr_specs: Vec<AttrSpec> = schema
            .attributes()
            .iter()
            .map(|a| AttrSpec {
                name: a.name().to_string(),
                domain: a.domain().to_vec(),
            })
            .collect();

        let distribution = if let Some(graph) = inst.distribution().vc_graph() {
            DistSpec::VcReduction {
                edges: graph.edges().to_vec(),
                num_vertices: graph.num_vertices(),
            }
        } else if inst.distribution().is_tabular() {
            let support = inst.distribution().enumerate_support()?;
            let entries = support
                .rows()
                .iter()
                .map(|(assignment, p)| TableEntry {
                    values: assignment
                        .values()
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| schema.attribute(i).domain()[v as usize].clone())
                        .collect(),
                    p: *p,
                })
                .collect();
            DistSpec::Table { entries }
        } else {
            // Product: recover the marginals from the enumerated support.
            let support = inst.distribution().enumerate_support()?;
            let marginals = schema
                .attributes()
                .iter()
                .enumerate()
                .map(|(i, a)| (a.name().to_string(), support.marginal(i, a.domain_size())))
                .collect();
            DistSpec::Product { marginals }
        };

        let functions = inst
            .functions()
            .iter()
            .map(|f| function_spec(schema, f))
            .collect();

        Ok(ScenarioFile {
            schema: attr_specs,
            distribution,
            functions,
            target: inst.target_name().to_string(),
            alpha: inst.alpha(),
            k: inst.k(),
            estimator: Some(EstimatorSpec::from_config(inst.estimator())),
        })
    }

    pub fn to_instance(&self) -> Result<ProxyInstance> {
        let distribution = match &self.distribution {
            DistSpec::Table { entries } => {
                let schema = self.build_schema()?;
                let rows = entries
                    .iter()
                    .map(|e| {
                        if e.values.len() != schema.len() {
                            return Err(Error::ScenarioFile(format!(
                                "table entry has {} values for {} attributes",
                                e.values.len(),
                                schema.len()
                            )));
                        }
                        let pairs = schema
                            .attributes()
                            .iter()
                            .zip(&e.values)
                            .map(|(a, l)| (a.name(), l.as_str()));
                        let assignment = schema.assignment_from_labels(pairs)?;
                        Ok((assignment, e.p))
                    })
                    .collect::<Result<Vec<(Assignment, f64)>>>()?;
                JointDistribution::tabular(schema, rows)?
            }
            DistSpec::Product { marginals } => {
                let schema = self.build_schema()?;
                if marginals.len() != schema.len() {
                    return Err(Error::ScenarioFile(format!(
                        "{} marginals for {} attributes",
                        marginals.len(),
                        schema.len()
                    )));
                }
                let ordered = schema
                    .attributes()
                    .iter()
                    .map(|a| {
                        marginals.get(a.name()).cloned().ok_or_else(|| {
                            Error::ScenarioFile(format!("no marginal for attribute `{}`", a.name()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                JointDistribution::product(schema, ordered)?
            }
            DistSpec::VcReduction {
                edges,
                num_vertices,
            } => {
                let graph = Graph::new(*num_vertices, edges.clone())?;
                let d = JointDistribution::vc_reduction(graph)?;
                self.check_vc_schema(d.schema())?;
                d
            }
        };

        let schema = distribution.schema();
        let functions = self
            .functions
            .iter()
            .map(|spec| build_function(schema, spec))
            .collect::<Result<Vec<_>>>()?;
        let estimator = match &self.estimator {
            Some(spec) => spec.to_config()?,
            None => EstimatorConfig::default(),
        };
        ProxyInstance::new(
            distribution,
            functions,
            &self.target,
            self.alpha,
            self.k,
            estimator,
        )
    }

    fn build_schema(&self) -> Result<AttributeSchema> {
        AttributeSchema::new(
            self.schema
                .iter()
                .map(|a| (a.name.clone(), a.domain.clone()))
                .collect(),
        )
    }

    /// The vc_reduction kind fixes the schema: `n + 1` binary attributes
    /// named `v0..v{n-1}` plus `target`, which is what function inputs and
    /// the target field must reference.
    fn check_vc_schema(&self, derived: &AttributeSchema) -> Result<()> {
        if self.schema.len() != derived.len() {
            return Err(Error::ScenarioFile(format!(
                "vc_reduction needs {} attributes (vertices + target), file has {}",
                derived.len(),
                self.schema.len()
            )));
        }
        for (spec, attr) in self.schema.iter().zip(derived.attributes()) {
            if spec.name != attr.name() {
                return Err(Error::ScenarioFile(format!(
                    "vc_reduction attribute {} must be named `{}`, file says `{}`",
                    derived.attr_index(attr.name()).unwrap(),
                    attr.name(),
                    spec.name
                )));
            }
            if spec.domain.len() != 2 {
                return Err(Error::ScenarioFile(format!(
                    "vc_reduction attributes are binary, `{}` has {} labels",
                    spec.name,
                    spec.domain.len()
                )));
            }
        }
        Ok(())
    }
}

fn function_spec(schema: &AttributeSchema, f: &FunctionDef) -> FunctionSpec {
    let inputs: Vec<String> = f
        .inputs()
        .iter()
        .map(|&i| schema.attribute(i).name().to_string())
        .collect();
    let body = match f.body() {
        FunctionBody::Projection => BodySpec::Projection,
        FunctionBody::Table { outputs } => {
            let sizes: Vec<usize> = f
                .inputs()
                .iter()
                .map(|&i| schema.attribute(i).domain_size())
                .collect();
            let mut map = Vec::with_capacity(outputs.len());
            let mut cursor = vec![0usize; sizes.len()];
            for &out in outputs {
                map.push(MapRow {
                    input: cursor
                        .iter()
                        .zip(f.inputs())
                        .map(|(&v, &i)| schema.attribute(i).domain()[v].clone())
                        .collect(),
                    out: f.output_domain()[out as usize].clone(),
                });
                for pos in (0..cursor.len()).rev() {
                    cursor[pos] += 1;
                    if cursor[pos] < sizes[pos] {
                        break;
                    }
                    cursor[pos] = 0;
                }
            }
            BodySpec::Table { map }
        }
    };
    FunctionSpec {
        name: f.name().to_string(),
        inputs,
        output_domain: f.output_domain().to_vec(),
        body,
    }
}

fn build_function(schema: &AttributeSchema, spec: &FunctionSpec) -> Result<FunctionDef> {
    let input_refs: Vec<&str> = spec.inputs.iter().map(String::as_str).collect();
    match &spec.body {
        BodySpec::Projection => {
            if input_refs.len() != 1 {
                return Err(Error::ScenarioFile(format!(
                    "projection `{}` must take exactly one input",
                    spec.name
                )));
            }
            let f = FunctionDef::projection(schema, spec.name.clone(), input_refs[0])?;
            if f.output_domain() != spec.output_domain.as_slice() {
                return Err(Error::ScenarioFile(format!(
                    "projection `{}` output domain must equal its input attribute's domain",
                    spec.name
                )));
            }
            Ok(f)
        }
        BodySpec::Table { map } => {
            let rows: Vec<(Vec<&str>, &str)> = map
                .iter()
                .map(|r| (r.input.iter().map(String::as_str).collect(), r.out.as_str()))
                .collect();
            FunctionDef::table_from_rows(
                schema,
                spec.name.clone(),
                &input_refs,
                spec.output_domain.clone(),
                &rows,
            )
        }
    }
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn to_json_string(file: &ScenarioFile) -> Result<String> {
    let mut s = serde_json::to_string_pretty(file)?;
    s.push('\n');
    Ok(s)
}

pub fn save(inst: &ProxyInstance, path: &Path) -> Result<()> {
    let file = ScenarioFile::from_instance(inst)?;
    std::fs::write(path, to_json_string(&file)?)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<ProxyInstance> {
    let text = std::fs::read_to_string(path)?;
    let file: ScenarioFile = serde_json::from_str(&text)?;
    file.to_instance()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reductions::encode_vertex_cover;

    #[test]
    fn tabular_roundtrip_preserves_solves() {
        let inst = fixtures::xor_with_decoy();
        let file = ScenarioFile::from_instance(&inst).unwrap();
        let back = file.to_instance().unwrap();
        assert_eq!(inst.schema(), back.schema());
        assert_eq!(inst.functions(), back.functions());
        assert_eq!(inst.alpha(), back.alpha());
        assert_eq!(
            inst.distribution().enumerate_support().unwrap().rows(),
            back.distribution().enumerate_support().unwrap().rows()
        );
    }

    #[test]
    fn vc_roundtrip_keeps_graph() {
        let g = Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = encode_vertex_cover(&g, 2).unwrap().into_instance();
        let file = ScenarioFile::from_instance(&inst).unwrap();
        assert!(matches!(file.distribution, DistSpec::VcReduction { .. }));
        let back = file.to_instance().unwrap();
        assert_eq!(back.distribution().vc_graph().unwrap().edges(), g.edges());
        assert_eq!(back.alpha(), 0.5);
        assert_eq!(back.estimator().kind, EstimatorKind::PointConditioned);
    }

    #[test]
    fn export_is_byte_stable() {
        let inst = fixtures::copy_pair();
        let a = to_json_string(&ScenarioFile::from_instance(&inst).unwrap()).unwrap();
        let b = to_json_string(&ScenarioFile::from_instance(&inst).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_estimator_spec() {
        let spec = EstimatorSpec {
            mode: "psychic".into(),
            samples: None,
            seed: None,
            kind: None,
        };
        assert!(matches!(spec.to_config(), Err(Error::ScenarioFile(_))));
    }

    #[test]
    fn vc_file_with_renamed_attributes_is_rejected() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let inst = encode_vertex_cover(&g, 1).unwrap().into_instance();
        let mut file = ScenarioFile::from_instance(&inst).unwrap();
        file.schema[0].name = "vertex_zero".into();
        assert!(matches!(file.to_instance(), Err(Error::ScenarioFile(_))));
    }

    #[test]
    fn product_roundtrip() {
        let d = fixtures::uniform_binary_pair();
        let f = FunctionDef::projection(d.schema(), "f0", "a1").unwrap();
        let inst =
            ProxyInstance::new(d, vec![f], "a2", 0.5, None, EstimatorConfig::default()).unwrap();
        let file = ScenarioFile::from_instance(&inst).unwrap();
        assert!(matches!(file.distribution, DistSpec::Product { .. }));
        let back = file.to_instance().unwrap();
        assert_eq!(
            inst.distribution().enumerate_support().unwrap().rows(),
            back.distribution().enumerate_support().unwrap().rows()
        );
    }
}
