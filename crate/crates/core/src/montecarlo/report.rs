use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::estimate::{MCEstimate, Z95};

/// Outcome of one registered experiment.
///
/// `pass` holds iff `|value − target| ≤ 1.96·stderr + allowance`; a report
/// without a target always passes. Experiment-specific parameters
/// (`n_steps`, `estimator`, `constant`, ...) are flattened into the object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    #[serde(flatten)]
    pub params: Map<String, Value>,
    pub value: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
    pub ci95: [f64; 2],
    pub target: Option<f64>,
    pub allowance: f64,
    pub pass: bool,
}

impl ExperimentReport {
    pub fn new(name: impl Into<String>, estimate: &MCEstimate, target: Option<f64>, allowance: f64) -> Self {
        let pass = target.is_none_or(|t| estimate.covers(t, Z95, allowance));
        Self {
            name: name.into(),
            params: Map::new(),
            value: estimate.mean,
            stderr: estimate.stderr,
            n: estimate.n_samples,
            seed: estimate.seed,
            ci95: estimate.ci95,
            target,
            allowance,
            pass,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }
}
