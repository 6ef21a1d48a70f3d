use crate::error::{Error, Result};
use crate::model::schema::{Assignment, AttributeSchema};

/// How a function computes its output from its input attributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionBody {
    /// Identity on a single input attribute; the output domain equals that
    /// attribute's domain.
    Projection,
    /// Total lookup table over the product of the input domains. `outputs`
    /// is indexed by the mixed-radix rank of the restricted input assignment
    /// (first input most significant) and holds output-domain indices.
    Table { outputs: Vec<u32> },
}

/// A deterministic function reading a subset of schema attributes and
/// producing a value in its own finite output domain. Validated against a
/// schema at construction; immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDef {
    name: String,
    inputs: Vec<usize>,
    input_sizes: Vec<u32>,
    output_domain: Vec<String>,
    body: FunctionBody,
}

impl FunctionDef {
    /// A projection of one attribute, named `name`.
    pub fn projection(
        schema: &AttributeSchema,
        name: impl Into<String>,
        attr: &str,
    ) -> Result<Self> {
        let idx = schema
            .attr_index(attr)
            .ok_or_else(|| Error::Function(format!("unknown input attribute `{attr}`")))?;
        Ok(FunctionDef {
            name: name.into(),
            inputs: vec![idx],
            input_sizes: vec![schema.attribute(idx).domain_size() as u32],
            output_domain: schema.attribute(idx).domain().to_vec(),
            body: FunctionBody::Projection,
        })
    }

    /// A table function defined by a closure over input value indices. The
    /// closure must return an output-domain index for every input cell.
    pub fn table_from_fn(
        schema: &AttributeSchema,
        name: impl Into<String>,
        inputs: &[&str],
        output_domain: Vec<String>,
        f: impl Fn(&[u32]) -> u32,
    ) -> Result<Self> {
        let (input_idx, input_sizes) = resolve_inputs(schema, inputs)?;
        validate_output_domain(&output_domain)?;
        let cells = table_cells(&input_sizes)?;
        let mut outputs = Vec::with_capacity(cells as usize);
        let mut cursor = vec![0u32; input_sizes.len()];
        for _ in 0..cells {
            let out = f(&cursor);
            if (out as usize) >= output_domain.len() {
                return Err(Error::Function(format!(
                    "table output index {out} out of range for output domain of size {}",
                    output_domain.len()
                )));
            }
            outputs.push(out);
            advance(&mut cursor, &input_sizes);
        }
        Ok(FunctionDef {
            name: name.into(),
            inputs: input_idx,
            input_sizes,
            output_domain,
            body: FunctionBody::Table { outputs },
        })
    }

    /// A table function from a dense output vector indexed by the
    /// mixed-radix rank of the input cell (first input most significant).
    pub fn table_from_outputs(
        schema: &AttributeSchema,
        name: impl Into<String>,
        inputs: &[&str],
        output_domain: Vec<String>,
        outputs: Vec<u32>,
    ) -> Result<Self> {
        let (input_idx, input_sizes) = resolve_inputs(schema, inputs)?;
        validate_output_domain(&output_domain)?;
        let cells = table_cells(&input_sizes)?;
        if outputs.len() as u64 != cells {
            return Err(Error::Function(format!(
                "table has {} outputs, input product domain has {cells} cells",
                outputs.len()
            )));
        }
        if let Some(&bad) = outputs
            .iter()
            .find(|&&o| (o as usize) >= output_domain.len())
        {
            return Err(Error::Function(format!(
                "table output index {bad} out of range for output domain of size {}",
                output_domain.len()
            )));
        }
        Ok(FunctionDef {
            name: name.into(),
            inputs: input_idx,
            input_sizes,
            output_domain,
            body: FunctionBody::Table { outputs },
        })
    }

    /// A table function from explicit `(input labels, output label)` rows.
    /// The rows must cover every input cell exactly once.
    pub fn table_from_rows(
        schema: &AttributeSchema,
        name: impl Into<String>,
        inputs: &[&str],
        output_domain: Vec<String>,
        rows: &[(Vec<&str>, &str)],
    ) -> Result<Self> {
        let (input_idx, input_sizes) = resolve_inputs(schema, inputs)?;
        validate_output_domain(&output_domain)?;
        let cells = table_cells(&input_sizes)?;
        let mut outputs: Vec<Option<u32>> = vec![None; cells as usize];
        for (in_labels, out_label) in rows {
            if in_labels.len() != input_idx.len() {
                return Err(Error::Function(format!(
                    "table row has {} inputs, function takes {}",
                    in_labels.len(),
                    input_idx.len()
                )));
            }
            let mut rank: u64 = 0;
            for ((label, &attr_idx), &size) in in_labels.iter().zip(&input_idx).zip(&input_sizes) {
                let v = schema
                    .attribute(attr_idx)
                    .label_index(label)
                    .ok_or_else(|| {
                        Error::Function(format!(
                            "label `{label}` not in domain of input attribute `{}`",
                            schema.attribute(attr_idx).name()
                        ))
                    })?;
                rank = rank * size as u64 + v as u64;
            }
            let out = output_domain
                .iter()
                .position(|l| l == out_label)
                .ok_or_else(|| {
                    Error::Function(format!("output label `{out_label}` not in output domain"))
                })?;
            if outputs[rank as usize].replace(out as u32).is_some() {
                return Err(Error::Function(format!(
                    "duplicate table row for input cell {in_labels:?}"
                )));
            }
        }
        let outputs = outputs
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| Error::Function(format!("table is not total: cell {i} undefined")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(FunctionDef {
            name: name.into(),
            inputs: input_idx,
            input_sizes,
            output_domain,
            body: FunctionBody::Table { outputs },
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Input attribute indices into the schema, in declaration order.
    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn output_domain(&self) -> &[String] {
        &self.output_domain
    }

    pub fn body(&self) -> &FunctionBody {
        &self.body
    }

    /// Applies the function to a full assignment, returning the output-domain
    /// index. Assignments validated against the same schema cannot fail.
    pub fn evaluate(&self, assignment: &Assignment) -> u32 {
        match &self.body {
            FunctionBody::Projection => assignment.get(self.inputs[0]),
            FunctionBody::Table { outputs } => {
                let mut rank: u64 = 0;
                for (&attr_idx, &size) in self.inputs.iter().zip(&self.input_sizes) {
                    rank = rank * size as u64 + assignment.get(attr_idx) as u64;
                }
                outputs[rank as usize]
            }
        }
    }

    /// Applies the function and renders the output label.
    pub fn evaluate_label<'a>(&'a self, assignment: &Assignment) -> &'a str {
        &self.output_domain[self.evaluate(assignment) as usize]
    }

    /// Re-checks this function against a schema (used when assembling an
    /// instance from parts that may have been built against different
    /// schemas).
    pub(crate) fn check_against(&self, schema: &AttributeSchema) -> Result<()> {
        for (&idx, &size) in self.inputs.iter().zip(&self.input_sizes) {
            if idx >= schema.len() || schema.attribute(idx).domain_size() as u32 != size {
                return Err(Error::Function(format!(
                    "function `{}` was built against a different schema",
                    self.name
                )));
            }
        }
        if self.body == FunctionBody::Projection
            && self.output_domain != schema.attribute(self.inputs[0]).domain()
        {
            return Err(Error::Function(format!(
                "projection `{}` output domain no longer matches its input attribute",
                self.name
            )));
        }
        Ok(())
    }
}

fn resolve_inputs(schema: &AttributeSchema, inputs: &[&str]) -> Result<(Vec<usize>, Vec<u32>)> {
    if inputs.is_empty() {
        return Err(Error::Function("function needs at least one input".into()));
    }
    let mut idx = Vec::with_capacity(inputs.len());
    for name in inputs {
        let i = schema
            .attr_index(name)
            .ok_or_else(|| Error::Function(format!("unknown input attribute `{name}`")))?;
        if idx.contains(&i) {
            return Err(Error::Function(format!(
                "duplicate input attribute `{name}`"
            )));
        }
        idx.push(i);
    }
    let sizes = idx
        .iter()
        .map(|&i| schema.attribute(i).domain_size() as u32)
        .collect();
    Ok((idx, sizes))
}

fn validate_output_domain(output_domain: &[String]) -> Result<()> {
    if output_domain.is_empty() {
        return Err(Error::Function("output domain is empty".into()));
    }
    for (j, label) in output_domain.iter().enumerate() {
        if output_domain[..j].contains(label) {
            return Err(Error::Function(format!("duplicate output label `{label}`")));
        }
    }
    Ok(())
}

fn table_cells(input_sizes: &[u32]) -> Result<u64> {
    let mut cells: u64 = 1;
    for &s in input_sizes {
        cells = cells
            .checked_mul(s as u64)
            .filter(|&c| c <= (1 << 24))
            .ok_or_else(|| Error::Function("table input product domain too large".into()))?;
    }
    Ok(cells)
}

fn advance(cursor: &mut [u32], sizes: &[u32]) {
    for pos in (0..cursor.len()).rev() {
        cursor[pos] += 1;
        if cursor[pos] < sizes[pos] {
            return;
        }
        cursor[pos] = 0;
    }
}
