use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A named attribute with a finite, ordered value domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    name: String,
    domain: Vec<String>,
}

impl Attribute {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn label_index(&self, label: &str) -> Option<u32> {
        self.domain
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }
}

/// An ordered set of finite attributes: the universe an instance is defined
/// over. Immutable once validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeSchema {
    attributes: Vec<Attribute>,
    num_states: u128,
}

impl AttributeSchema {
    /// Validates and builds a schema. Attribute names must be unique, every
    /// domain must hold at least two distinct labels, and the product-domain
    /// size must be computable without overflow.
    pub fn new<N, L>(attributes: Vec<(N, Vec<L>)>) -> Result<Self>
    where
        N: Into<String>,
        L: Into<String>,
    {
        if attributes.is_empty() {
            return Err(Error::Schema("schema has no attributes".into()));
        }
        let attributes: Vec<Attribute> = attributes
            .into_iter()
            .map(|(name, domain)| Attribute {
                name: name.into(),
                domain: domain.into_iter().map(Into::into).collect(),
            })
            .collect();

        let mut num_states: u128 = 1;
        for (i, attr) in attributes.iter().enumerate() {
            if attr.name.is_empty() {
                return Err(Error::Schema(format!("attribute {i} has an empty name")));
            }
            if attr.domain.len() < 2 {
                return Err(Error::Schema(format!(
                    "attribute `{}` needs a domain of at least 2 labels, got {}",
                    attr.name,
                    attr.domain.len()
                )));
            }
            for (j, label) in attr.domain.iter().enumerate() {
                if attr.domain[..j].contains(label) {
                    return Err(Error::Schema(format!(
                        "attribute `{}` has duplicate domain label `{label}`",
                        attr.name
                    )));
                }
            }
            if attributes[..i].iter().any(|a| a.name == attr.name) {
                return Err(Error::Schema(format!(
                    "duplicate attribute name `{}`",
                    attr.name
                )));
            }
            num_states = num_states
                .checked_mul(attr.domain.len() as u128)
                .ok_or_else(|| Error::Schema("product domain size overflows u128".into()))?;
        }

        Ok(AttributeSchema {
            attributes,
            num_states,
        })
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn attribute(&self, index: usize) -> &Attribute {
        &self.attributes[index]
    }

    pub fn attr_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    /// Size of the joint product domain.
    pub fn num_states(&self) -> u128 {
        self.num_states
    }

    /// Validates one value index per attribute, in schema order.
    pub fn assignment(&self, values: Vec<u32>) -> Result<Assignment> {
        if values.len() != self.attributes.len() {
            return Err(Error::Schema(format!(
                "assignment has {} values, schema has {} attributes",
                values.len(),
                self.attributes.len()
            )));
        }
        for (i, (&v, attr)) in values.iter().zip(&self.attributes).enumerate() {
            if (v as usize) >= attr.domain.len() {
                return Err(Error::Schema(format!(
                    "value index {v} out of range for attribute `{}` (position {i})",
                    attr.name
                )));
            }
        }
        Ok(Assignment(values))
    }

    /// Builds an assignment from `(attribute name, value label)` pairs. Every
    /// schema attribute must be covered exactly once.
    pub fn assignment_from_labels<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Assignment> {
        let mut values: Vec<Option<u32>> = vec![None; self.attributes.len()];
        for (name, label) in pairs {
            let idx = self
                .attr_index(name)
                .ok_or_else(|| Error::Schema(format!("unknown attribute `{name}`")))?;
            let v = self.attributes[idx].label_index(label).ok_or_else(|| {
                Error::Schema(format!(
                    "label `{label}` not in domain of attribute `{name}`"
                ))
            })?;
            if values[idx].replace(v).is_some() {
                return Err(Error::Schema(format!("attribute `{name}` assigned twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Schema(format!(
                        "attribute `{}` missing from assignment",
                        self.attributes[i].name
                    ))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(Assignment(values))
    }

    /// Renders an assignment as `name=label` pairs for human output.
    pub fn render(&self, assignment: &Assignment) -> String {
        assignment
            .values()
            .iter()
            .zip(&self.attributes)
            .map(|(&v, attr)| format!("{}={}", attr.name, attr.domain[v as usize]))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Iterates the full product domain in canonical order (first attribute
    /// most significant). Callers must cap-check `num_states` first.
    pub fn states(&self) -> StateIter<'_> {
        StateIter {
            schema: self,
            current: Some(Assignment(vec![0; self.attributes.len()])),
        }
    }
}

/// One value per schema attribute, stored as value indices in schema order.
/// This is the canonical representation; ordering is lexicographic over the
/// index vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(Vec<u32>);

impl Assignment {
    pub(crate) fn new_unchecked(values: Vec<u32>) -> Self {
        Assignment(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, attr_index: usize) -> u32 {
        self.0[attr_index]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Odometer over the product domain, canonical order.
pub struct StateIter<'a> {
    schema: &'a AttributeSchema,
    current: Option<Assignment>,
}

impl Iterator for StateIter<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let out = self.current.clone()?;
        let values = &mut self.current.as_mut().unwrap().0;
        let mut pos = values.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            values[pos] += 1;
            if (values[pos] as usize) < self.schema.attributes[pos].domain_size() {
                break;
            }
            values[pos] = 0;
        }
        Some(out)
    }
}

/// Shared handle used by distributions and instances.
pub type SchemaRef = Arc<AttributeSchema>;
