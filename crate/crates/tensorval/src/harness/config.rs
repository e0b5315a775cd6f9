//! Configuration schema for verification runs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytope::{GeomError, Polytope};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("unknown preset polytope '{0}'")]
    UnknownPreset(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// A polytope reference in a config: a named preset, an external file
/// (JSON vertex list or OFF), or an inline vertex list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Shape {
    Preset { preset: String },
    File { path: String },
    Inline { dim: usize, vertices: Vec<Vec<f64>> },
}

impl Shape {
    pub fn realize(&self) -> Result<Polytope, ConfigError> {
        match self {
            Shape::Preset { preset } => preset_polytope(preset),
            Shape::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                    path: path.clone(),
                    source,
                })?;
                let p = if path.ends_with(".off") || text.trim_start().starts_with("OFF") {
                    Polytope::from_off(&text)
                } else {
                    Polytope::from_json(&text)
                };
                Ok(p?)
            }
            Shape::Inline { dim, vertices } => {
                let pts: Vec<[f64; 3]> = vertices
                    .iter()
                    .map(|v| {
                        let mut p = [0.0; 3];
                        for (i, &c) in v.iter().take(3).enumerate() {
                            p[i] = c;
                        }
                        p
                    })
                    .collect();
                Ok(Polytope::build(&pts, *dim)?)
            }
        }
    }
}

pub fn preset_polytope(name: &str) -> Result<Polytope, ConfigError> {
    let pts: Vec<[f64; 3]> = match name {
        "unit-square" => vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
        ],
        "unit-triangle" => vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        "unit-cube" => {
            let mut v = Vec::new();
            for x in [0.0, 1.0] {
                for y in [0.0, 1.0] {
                    for z in [0.0, 1.0] {
                        v.push([x, y, z]);
                    }
                }
            }
            v
        }
        "unit-tetrahedron" => vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ],
        _ => return Err(ConfigError::UnknownPreset(name.to_string())),
    };
    let dim = if pts.iter().all(|p| p[2] == 0.0) { 2 } else { 3 };
    Ok(Polytope::build(&pts, dim)?)
}

/// One verification experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Experiment {
    /// Monte Carlo kinematic integral against the closed-form expansion.
    Kinematic {
        #[serde(default)]
        name: Option<String>,
        body: Shape,
        other: Shape,
        j: i64,
        r: i64,
        s: i64,
        #[serde(default)]
        samples: Option<u64>,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        zmax: Option<f64>,
    },
    /// Monte Carlo Crofton integral over flats against the closed form.
    Crofton {
        #[serde(default)]
        name: Option<String>,
        body: Shape,
        k: i64,
        j: i64,
        r: i64,
        s: i64,
        #[serde(default)]
        samples: Option<u64>,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        zmax: Option<f64>,
    },
    /// Exact check that the McMullen relation residual vanishes.
    Mcmullen {
        #[serde(default)]
        name: Option<String>,
        body: Shape,
        k: i64,
        r: i64,
        s: i64,
        #[serde(default)]
        tol: Option<f64>,
    },
    /// Hit-or-miss parallel volume against the Steiner polynomial.
    Steiner {
        #[serde(default)]
        name: Option<String>,
        body: Shape,
        eps: f64,
        #[serde(default)]
        samples: Option<u64>,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        zmax: Option<f64>,
    },
    /// Exact reconstruction identities between coefficient families.
    Coefficients {
        #[serde(default)]
        name: Option<String>,
        n_max: i64,
        s_max: i64,
        p_max: i64,
    },
    /// Structural tensor identities on a single body: `Φ^{0,1} ≡ 0`,
    /// `Φ_0^{0,2} ∝ Q`, and the curvature-measure expansion.
    TensorAlgebra {
        #[serde(default)]
        name: Option<String>,
        body: Shape,
        #[serde(default)]
        tol: Option<f64>,
    },
}

impl Experiment {
    pub fn kind(&self) -> &'static str {
        match self {
            Experiment::Kinematic { .. } => "kinematic",
            Experiment::Crofton { .. } => "crofton",
            Experiment::Mcmullen { .. } => "mcmullen",
            Experiment::Steiner { .. } => "steiner",
            Experiment::Coefficients { .. } => "coefficients",
            Experiment::TensorAlgebra { .. } => "tensor-algebra",
        }
    }

    pub fn name(&self) -> String {
        let explicit = match self {
            Experiment::Kinematic { name, .. }
            | Experiment::Crofton { name, .. }
            | Experiment::Mcmullen { name, .. }
            | Experiment::Steiner { name, .. }
            | Experiment::Coefficients { name, .. }
            | Experiment::TensorAlgebra { name, .. } => name.clone(),
        };
        explicit.unwrap_or_else(|| self.kind().to_string())
    }
}

/// A verification run: global defaults plus a list of experiments.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<u64>,
    #[serde(default)]
    pub workers: Option<usize>,
    pub experiments: Vec<Experiment>,
}

impl Config {
    pub fn from_path(path: &std::path::Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| ConfigError::Parse(e.to_string()))
    }
}
