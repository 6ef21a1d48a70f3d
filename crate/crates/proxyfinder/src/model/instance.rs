use crate::error::{Error, Result};
use crate::estimation::{self, EstimatorConfig, UncertaintyReport};
use crate::model::distribution::JointDistribution;
use crate::model::function::FunctionDef;
use crate::model::schema::AttributeSchema;

/// A complete proxy-discovery problem: joint distribution, candidate
/// function set, target attribute, uncertainty threshold in bits, optional
/// subset-size bound, and the estimator to score subsets with.
#[derive(Debug, Clone)]
pub struct ProxyInstance {
    distribution: JointDistribution,
    functions: Vec<FunctionDef>,
    target: usize,
    alpha: f64,
    k: Option<usize>,
    estimator: EstimatorConfig,
}

impl ProxyInstance {
    pub fn new(
        distribution: JointDistribution,
        functions: Vec<FunctionDef>,
        target: &str,
        alpha: f64,
        k: Option<usize>,
        estimator: EstimatorConfig,
    ) -> Result<Self> {
        let schema = distribution.schema();
        let target = schema.attr_index(target).ok_or_else(|| {
            Error::Instance(format!("target `{target}` is not a schema attribute"))
        })?;
        for f in &functions {
            f.check_against(schema)?;
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Instance(format!(
                "alpha must be a nonnegative number of bits, got {alpha}"
            )));
        }
        // k = 0 is meaningful (is the empty set already below threshold?),
        // so only the upper bound is checked.
        if let Some(k) = k {
            if k > functions.len() {
                return Err(Error::Instance(format!(
                    "k = {k} exceeds the function count {}",
                    functions.len()
                )));
            }
        }
        Ok(ProxyInstance {
            distribution,
            functions,
            target,
            alpha,
            k,
            estimator,
        })
    }

    pub fn schema(&self) -> &AttributeSchema {
        self.distribution.schema()
    }

    pub fn distribution(&self) -> &JointDistribution {
        &self.distribution
    }

    pub fn functions(&self) -> &[FunctionDef] {
        &self.functions
    }

    pub fn function(&self, index: usize) -> &FunctionDef {
        &self.functions[index]
    }

    pub fn num_functions(&self) -> usize {
        self.functions.len()
    }

    /// Index of the target attribute in the schema.
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn target_name(&self) -> &str {
        self.schema().attribute(self.target).name()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn estimator(&self) -> &EstimatorConfig {
        &self.estimator
    }

    /// Returns a copy with a different threshold.
    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Instance(format!(
                "alpha must be a nonnegative number of bits, got {alpha}"
            )));
        }
        self.alpha = alpha;
        Ok(self)
    }

    /// Returns a copy with a different subset-size bound.
    pub fn with_k(mut self, k: Option<usize>) -> Result<Self> {
        if let Some(k) = k {
            if k > self.functions.len() {
                return Err(Error::Instance(format!(
                    "k = {k} exceeds the function count {}",
                    self.functions.len()
                )));
            }
        }
        self.k = k;
        Ok(self)
    }

    /// Returns a copy with a different estimator.
    pub fn with_estimator(mut self, estimator: EstimatorConfig) -> Self {
        self.estimator = estimator;
        self
    }

    /// Returns a copy without the function at `index` (remaining functions
    /// keep their relative order and are re-indexed). Models blocking one
    /// API and re-analyzing what the rest still leak.
    pub fn without_function(&self, index: usize) -> Result<Self> {
        if index >= self.functions.len() {
            return Err(Error::Input(format!("no function at index {index}")));
        }
        let mut functions = self.functions.clone();
        functions.remove(index);
        let k = self.k.map(|k| k.min(functions.len()));
        let target = self.target_name().to_string();
        ProxyInstance::new(
            self.distribution.clone(),
            functions,
            &target,
            self.alpha,
            k,
            self.estimator,
        )
    }

    /// Scores a function subset with this instance's estimator.
    pub fn uncertainty(&self, subset: &[usize]) -> Result<UncertaintyReport> {
        estimation::uncertainty(self, subset)
    }

    /// Mutual information between the target and the subset's joint output,
    /// clamped at zero.
    pub fn mutual_information(&self, subset: &[usize]) -> Result<f64> {
        estimation::mutual_information(self, subset)
    }
}
