//! JSON configuration for the probes. Parse errors carry serde's messages,
//! which name the offending field.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use symprod_core::DomainSpec;

use crate::error::{CliError, Result};

/// Config for the cone probe: either an explicit `(a, b)` pair or a
/// `random` batch section.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LipschitzConfig {
    #[serde(default)]
    pub a: Option<Complex64>,
    #[serde(default)]
    pub b: Option<Complex64>,
    #[serde(default = "default_t_values")]
    pub t_values: Vec<f64>,
    #[serde(default)]
    pub random: Option<LipschitzRandom>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LipschitzRandom {
    pub count: usize,
    #[serde(default = "default_min_im_gap")]
    pub min_im_gap: f64,
    #[serde(default = "default_box_half")]
    pub box_half: f64,
}

fn default_t_values() -> Vec<f64> {
    vec![1e-2, 1e-3, 1e-4]
}

fn default_min_im_gap() -> f64 {
    0.1
}

fn default_box_half() -> f64 {
    1.0
}

/// Config for the smoothness-loss probe.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothnessConfig {
    pub m: usize,
    pub n: usize,
    pub beta: f64,
    /// Grid of evaluation points in `[0.5, 0.99]`; a default log-spaced
    /// grid is used when empty.
    #[serde(default)]
    pub w_grid: Vec<f64>,
    #[serde(default)]
    pub seed: u64,
}

/// Which invariant family a sweep exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepSuite {
    /// Two-variable closed form vs root-based membership on the unit disc.
    BidiscEquivalence,
    /// Sign of the defining function vs root-based classification.
    DefiningFunctionEquivalence,
    /// Fiber bound: roots of |s| <= r stay in the ball max(sqrt(n) r, 1).
    Properness,
    /// Informational log-log fit of the distance bound against the
    /// defining function near the boundary.
    LojasiewiczFit,
}

/// Config for `probe sweep`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub suite: SweepSuite,
    /// Inline domain; takes precedence over `domain_path`.
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    /// Path to a domain JSON file.
    #[serde(default)]
    pub domain_path: Option<PathBuf>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    /// Half-width of the band excluded from equivalence comparisons.
    #[serde(default = "default_margin")]
    pub margin: f64,
    /// Sampling radius for coefficient-space draws.
    #[serde(default = "default_radius")]
    pub radius: f64,
    /// Row cap for the embedded sample table; counts and verdicts always
    /// cover every sample, and violations are always recorded.
    #[serde(default = "default_recorded")]
    pub max_recorded_samples: usize,
}

fn default_n() -> usize {
    2
}

fn default_samples() -> usize {
    10_000
}

fn default_margin() -> f64 {
    1e-9
}

fn default_radius() -> f64 {
    3.0
}

fn default_recorded() -> usize {
    20_000
}

impl SweepConfig {
    pub fn resolve_domain(&self) -> Result<DomainSpec> {
        if let Some(d) = &self.domain {
            return Ok(d.clone());
        }
        if let Some(path) = &self.domain_path {
            return DomainSpec::from_json_file(path).map_err(CliError::Core);
        }
        Ok(DomainSpec::unit_disc())
    }
}

/// Parses config JSON; errors carry the path of the offending field.
pub fn parse_config<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let mut deserializer = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut deserializer)
        .map_err(|e| CliError::Config(format!("field `{}`: {}", e.path(), e.inner())))
}

/// Parses a probe config file.
pub fn load_config<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
