use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::EnumerationLimits;
use crate::sphere_stats::HistogramSpec;

const DEFAULTS: &str = include_str!("../../defaults.toml");

/// Acceptance bands fixed from pilot runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Calibration {
    pub ensemble_delta: f64,
    pub ensemble_median_band: [f64; 2],
    pub ensemble_z_band: [f64; 2],
    pub fig2_ks_max: f64,
    pub random_ks_max: f64,
    pub random_discrepancy_max: f64,
    pub pole_gap_constant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub version: u32,
    pub seed: u64,
    pub runs: usize,
    pub mesh_s2: f64,
    pub mesh_s3: f64,
    pub max_energy_pairs: u64,
    pub histogram: HistogramSpec,
    pub limits: EnumerationLimits,
    pub calibration: Calibration,
}

impl Default for Config {
    fn default() -> Self {
        toml::from_str(DEFAULTS).expect("bundled defaults parse")
    }
}

impl Config {
    /// Bundled defaults with any keys from `text` overriding them.
    pub fn from_overrides(text: &str) -> Result<Self> {
        let mut base: toml::Table = toml::from_str(DEFAULTS)?;
        let over: toml::Table = toml::from_str(text)?;
        merge(&mut base, over);
        Ok(base.try_into()?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_overrides(&std::fs::read_to_string(path)?)
    }
}

fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}
