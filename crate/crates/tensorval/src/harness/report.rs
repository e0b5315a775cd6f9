//! JSON report emitted by a verification run.

use serde::Serialize;

use crate::mc::Estimate;
use crate::symtensor::SymTensor;

#[derive(Debug, Serialize)]
pub struct EstimateOut {
    pub mean: SymTensor,
    pub stderr: SymTensor,
    pub samples: u64,
    pub seed: u64,
    pub window_volume: f64,
}

impl From<&Estimate> for EstimateOut {
    fn from(e: &Estimate) -> Self {
        EstimateOut {
            mean: e.mean.clone(),
            stderr: e.stderr.clone(),
            samples: e.samples,
            seed: e.seed,
            window_volume: e.window_volume,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExperimentResult {
    pub name: String,
    pub kind: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<SymTensor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ExperimentResult {
    pub fn bare(name: String, kind: &str, pass: bool) -> Self {
        ExperimentResult {
            name,
            kind: kind.to_string(),
            pass,
            exact: None,
            estimate: None,
            max_z: None,
            max_abs_dev: None,
            residual: None,
            checks: None,
            detail: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub pass: bool,
    pub seed: u64,
    pub results: Vec<ExperimentResult>,
}

impl Report {
    pub fn new(seed: u64, results: Vec<ExperimentResult>) -> Report {
        let pass = results.iter().all(|r| r.pass);
        Report { pass, seed, results }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
