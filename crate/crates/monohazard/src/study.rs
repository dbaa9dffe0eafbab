//! Study definitions: TOML study files and the built-in presets.
//!
//! ```toml
//! seed = 1                 # optional master seed
//!
//! [config]                 # optional; any TestConfig field
//! alpha = 0.10
//! bootstrap_b = 200
//! grid_points = 100
//!
//! [[experiment]]
//! label = "exp-gamma0"
//! n = 50
//! mc_reps = 200
//! test = "both"            # new | global | both
//! model = { kind = "model-b", gamma = 0.0, beta = 0.0, mu = 1.0, sigma = 0.1 }
//! ```
//!
//! Model kinds are `model-a` (`a, b, c, d`), `model-b`
//! (`gamma, beta, mu, sigma`) and `perturbed` (`base, height, eps, center`,
//! with `base` itself a model table).

use std::path::Path;

use monohazard_core::{HazardModel, ModelA, ModelB, TestConfig};
use serde::Deserialize;

use crate::harness::{ExperimentSpec, TestSelection};

#[derive(Debug, thiserror::Error)]
pub enum StudyError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad study file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("experiment {label:?}: {source}")]
    Invalid {
        label: String,
        source: monohazard_core::Error,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentEntry {
    pub label: String,
    pub n: usize,
    pub mc_reps: usize,
    #[serde(default = "default_selection")]
    pub test: TestSelection,
    pub model: HazardModel,
}

fn default_selection() -> TestSelection {
    TestSelection::Both
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyFile {
    pub seed: Option<u64>,
    #[serde(default)]
    pub config: TestConfig,
    #[serde(default)]
    pub experiment: Vec<ExperimentEntry>,
}

impl StudyFile {
    pub fn parse(text: &str) -> Result<Self, StudyError> {
        let s: StudyFile = toml::from_str(text)?;
        for e in &s.experiment {
            e.model.validate().map_err(|source| StudyError::Invalid {
                label: e.label.clone(),
                source,
            })?;
        }
        Ok(s)
    }

    pub fn read(path: &Path) -> Result<Self, StudyError> {
        let text = std::fs::read_to_string(path).map_err(|source| StudyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn specs(&self) -> Vec<ExperimentSpec> {
        self.experiment
            .iter()
            .map(|e| ExperimentSpec {
                label: e.label.clone(),
                model: e.model.clone(),
                n: e.n,
                mc_reps: e.mc_reps,
                tests: e.test,
                config: self.config.clone(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Model A power curve over d.
    Fig2,
    /// Model B bump grid over gamma and (beta, sigma).
    Table1,
}

pub const FIG2_D: [f64; 9] = [-1.14, -1.0, -0.75, -0.5, -0.25, 0.0, 0.5, 1.0, 1.5];
pub const TABLE1_GAMMA: [f64; 5] = [-0.5, -0.25, 0.0, 0.5, 1.0];
/// `(beta, sigma)` rows; `sigma` is inert when `beta = 0`.
pub const TABLE1_BUMPS: [(f64, f64); 3] = [(0.0, 0.1), (0.3, 0.1), (0.3, 0.2)];

/// Desk-scale defaults shared by the presets.
pub fn preset_config() -> TestConfig {
    TestConfig {
        alpha: 0.10,
        bootstrap_b: 200,
        grid_points: 100,
        ..TestConfig::default()
    }
}

impl Preset {
    pub fn study(self) -> StudyFile {
        let entry = |label: String, model: HazardModel| ExperimentEntry {
            label,
            n: 50,
            mc_reps: 200,
            test: TestSelection::Both,
            model,
        };
        let experiment = match self {
            Preset::Fig2 => FIG2_D
                .iter()
                .map(|&d| {
                    let m = ModelA::new(2.5, 0.75, 0.5, d).expect("preset parameters are valid");
                    entry(format!("fig2-d{d}"), HazardModel::ModelA(m))
                })
                .collect(),
            Preset::Table1 => TABLE1_BUMPS
                .iter()
                .flat_map(|&(beta, sigma)| {
                    TABLE1_GAMMA.iter().map(move |&gamma| {
                        let m = ModelB::new(gamma, beta, 1.0, sigma).expect("preset parameters are valid");
                        let label = if beta == 0.0 {
                            format!("table1-beta0-gamma{gamma}")
                        } else {
                            format!("table1-beta{beta}-sigma{sigma}-gamma{gamma}")
                        };
                        (label, HazardModel::ModelB(m))
                    })
                })
                .map(|(label, m)| entry(label, m))
                .collect(),
        };
        StudyFile {
            seed: None,
            config: preset_config(),
            experiment,
        }
    }
}
