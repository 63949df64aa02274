//! Registry of named experiments driven by JSON descriptors.
//!
//! A descriptor is an object whose `"exp"` field names the experiment; the
//! remaining fields are its parameters, e.g.
//! `{"exp": "spiral_mixed", "n_steps": 10000, "n_paths": 100000, "seed": 7}`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, SQRT_2};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brownian::{estimate_bm_stats, estimate_spiral_intrinsic, estimate_two_spirals_mixed};
use crate::error::{domain, Error, Result};
use crate::geometry::Polytope;
use crate::mixed::{kappa, normalized_mixed_volume, factorial};
use crate::montecarlo::ExperimentReport;
use crate::spectrum::{estimate_intrinsic_volume, estimate_mixed_volume, spectral_constant};
use crate::DEFAULT_SEED;

pub const DEFAULT_N_STEPS: usize = 10_000;
pub const DEFAULT_N_PATHS: u64 = 100_000;
pub const DEFAULT_N_SAMPLES: u64 = 100_000;
/// Ball resolution used for exact targets of spectral experiments.
pub const DEFAULT_BALL_N: usize = 642;

pub const SPIRAL_MIXED_ALLOWANCE: f64 = 0.04;
pub const SPIRAL_INTRINSIC_ALLOWANCE: f64 = 0.03;
pub const BM_MAX_ALLOWANCE: f64 = 0.02;
pub const BM_CDF_ALLOWANCE: f64 = 0.01;

/// Names accepted in the `"exp"` field.
pub const EXPERIMENTS: [&str; 7] = [
    "spiral_mixed",
    "spiral_intrinsic",
    "bm_max",
    "bm_argmax_value",
    "bm_cdf",
    "intrinsic_volume",
    "mixed_volume",
];

fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_n_steps() -> usize {
    DEFAULT_N_STEPS
}
fn default_n_paths() -> u64 {
    DEFAULT_N_PATHS
}
fn default_n_samples() -> u64 {
    DEFAULT_N_SAMPLES
}
fn default_level() -> f64 {
    1.0
}
fn default_ball_n() -> usize {
    DEFAULT_BALL_N
}

/// Parameters shared by the Brownian experiments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathParams {
    #[serde(default = "default_n_steps")]
    pub n_steps: usize,
    #[serde(default = "default_n_paths")]
    pub n_paths: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for PathParams {
    fn default() -> Self {
        Self {
            n_steps: DEFAULT_N_STEPS,
            n_paths: DEFAULT_N_PATHS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "exp", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExperimentConfig {
    SpiralMixed {
        #[serde(flatten)]
        paths: PathParams,
    },
    SpiralIntrinsic {
        k: usize,
        #[serde(flatten)]
        paths: PathParams,
    },
    BmMax {
        #[serde(flatten)]
        paths: PathParams,
    },
    BmArgmaxValue {
        #[serde(flatten)]
        paths: PathParams,
    },
    BmCdf {
        #[serde(default = "default_level")]
        level: f64,
        #[serde(flatten)]
        paths: PathParams,
    },
    IntrinsicVolume {
        body: Polytope,
        k: usize,
        #[serde(default = "default_n_samples")]
        n_samples: u64,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default)]
        target: Option<f64>,
        #[serde(default = "default_ball_n")]
        ball_n: usize,
    },
    MixedVolume {
        bodies: Vec<Polytope>,
        #[serde(default = "default_n_samples")]
        n_samples: u64,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default)]
        target: Option<f64>,
        #[serde(default = "default_ball_n")]
        ball_n: usize,
    },
}

/// Parses a descriptor. Malformed JSON is an input error, a missing or
/// unknown `"exp"` a config error, and bad parameters a domain error.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))?;
    config_from_value(value)
}

pub fn config_from_value(value: Value) -> Result<ExperimentConfig> {
    let name = match value.get("exp") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::Config("\"exp\" must be a string".into())),
        None => return Err(Error::Config("descriptor has no \"exp\" field".into())),
    };
    if !EXPERIMENTS.contains(&name.as_str()) {
        return Err(Error::Config(format!(
            "unknown experiment {name:?}; expected one of {}",
            EXPERIMENTS.join(", ")
        )));
    }
    serde_json::from_value(value).map_err(|e| Error::Domain(format!("invalid parameters for {name}: {e}")))
}

impl ExperimentConfig {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SpiralMixed { .. } => "spiral_mixed",
            Self::SpiralIntrinsic { .. } => "spiral_intrinsic",
            Self::BmMax { .. } => "bm_max",
            Self::BmArgmaxValue { .. } => "bm_argmax_value",
            Self::BmCdf { .. } => "bm_cdf",
            Self::IntrinsicVolume { .. } => "intrinsic_volume",
            Self::MixedVolume { .. } => "mixed_volume",
        }
    }

    /// Overrides the seed, whatever the experiment.
    pub fn with_seed(mut self, new: u64) -> Self {
        match &mut self {
            Self::SpiralMixed { paths }
            | Self::SpiralIntrinsic { paths, .. }
            | Self::BmMax { paths }
            | Self::BmArgmaxValue { paths }
            | Self::BmCdf { paths, .. } => paths.seed = new,
            Self::IntrinsicVolume { seed, .. } | Self::MixedVolume { seed, .. } => *seed = new,
        }
        self
    }
}

fn check_paths(p: &PathParams) -> Result<()> {
    if p.n_steps < 2 || p.n_paths < 2 {
        return domain("n_steps and n_paths must be at least 2");
    }
    Ok(())
}

fn path_report(name: &str, est: &crate::MCEstimate, target: f64, allowance: f64, p: &PathParams) -> ExperimentReport {
    ExperimentReport::new(name, est, Some(target), allowance)
        .with_param("n_steps", p.n_steps)
        .with_param("n_paths", p.n_paths)
}

/// Exact `V_k` or normalized mixed volume as `(target, half bracket width)`.
fn exact_target(bodies: &[Polytope], ball_n: usize) -> Option<(f64, f64)> {
    let d = bodies.first()?.dim_ambient();
    normalized_mixed_volume(bodies, d, ball_n)
        .ok()
        .map(|b| (b.value, 0.5 * (b.hi - b.lo)))
}

/// Runs the experiment and compares it with its registered target.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let name = config.name();
    match config {
        ExperimentConfig::SpiralMixed { paths: p } => {
            check_paths(p)?;
            let est = estimate_two_spirals_mixed(p.n_steps, p.n_paths, p.seed)?;
            Ok(path_report(name, &est, 2.0, SPIRAL_MIXED_ALLOWANCE, p))
        }
        ExperimentConfig::SpiralIntrinsic { k, paths: p } => {
            check_paths(p)?;
            let est = estimate_spiral_intrinsic(*k, p.n_steps, p.n_paths, p.seed)?;
            let target = kappa(*k) / factorial(*k);
            Ok(path_report(name, &est, target, SPIRAL_INTRINSIC_ALLOWANCE, p)
                .with_param("k", *k)
                .with_param("constant", spectral_constant(*k)))
        }
        ExperimentConfig::BmMax { paths: p } => {
            check_paths(p)?;
            let [m, _, _] = estimate_bm_stats(p.n_steps, p.n_paths, p.seed, 1.0)?;
            Ok(path_report(name, &m, FRAC_2_PI.sqrt(), BM_MAX_ALLOWANCE, p))
        }
        ExperimentConfig::BmArgmaxValue { paths: p } => {
            check_paths(p)?;
            let [_, h, _] = estimate_bm_stats(p.n_steps, p.n_paths, p.seed, 1.0)?;
            Ok(path_report(name, &h, 0.0, 0.0, p))
        }
        ExperimentConfig::BmCdf { level, paths: p } => {
            check_paths(p)?;
            if !(*level >= 0.0) || !level.is_finite() {
                return domain("level must be finite and nonnegative");
            }
            let [_, _, below] = estimate_bm_stats(p.n_steps, p.n_paths, p.seed, *level)?;
            let target = libm::erf(level / SQRT_2);
            Ok(path_report(name, &below, target, BM_CDF_ALLOWANCE, p).with_param("level", *level))
        }
        ExperimentConfig::IntrinsicVolume { body, k, n_samples, seed, target, ball_n } => {
            let est = estimate_intrinsic_volume(body, *k, *n_samples, *seed)?;
            let (target, allowance) = match target {
                Some(t) => (Some(*t), 0.0),
                None => match exact_target(&vec![body.clone(); *k], *ball_n) {
                    Some((t, a)) => (Some(t), a),
                    None => (None, 0.0),
                },
            };
            Ok(ExperimentReport::new(name, &est, target, allowance)
                .with_param("estimator", "intrinsic_volume")
                .with_param("k", *k)
                .with_param("d", body.dim_ambient())
                .with_param("constant", spectral_constant(*k)))
        }
        ExperimentConfig::MixedVolume { bodies, n_samples, seed, target, ball_n } => {
            let est = estimate_mixed_volume(bodies, *n_samples, *seed)?;
            let (target, allowance) = match target {
                Some(t) => (Some(*t), 0.0),
                None => match exact_target(bodies, *ball_n) {
                    Some((t, a)) => (Some(t), a),
                    None => (None, 0.0),
                },
            };
            let k = bodies.len();
            Ok(ExperimentReport::new(name, &est, target, allowance)
                .with_param("estimator", "mixed_volume")
                .with_param("k", k)
                .with_param("d", bodies[0].dim_ambient())
                .with_param("constant", spectral_constant(k)))
        }
    }
}

/// Target registered for an experiment, if it has a fixed one.
pub fn registered_target(name: &str, k: Option<usize>) -> Option<f64> {
    match name {
        "spiral_mixed" => Some(2.0),
        "spiral_intrinsic" => match k {
            Some(1) => Some(2.0),
            Some(2) => Some(FRAC_PI_2),
            _ => None,
        },
        "bm_max" => Some(FRAC_2_PI.sqrt()),
        "bm_argmax_value" => Some(0.0),
        "bm_cdf" => Some(libm::erf(1.0 / SQRT_2)),
        _ => None,
    }
}
