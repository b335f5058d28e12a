use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::{Provenance, UnitPointSet};

use super::covering::{covering_radius, CoveringEstimate};
use super::discrepancy::cap_discrepancy;
use super::energy::energy;
use super::ripley::{ripley, RipleyProfile};
use super::spacing::{nn_distances, spacing_from_distances, HistogramSpec, SpacingMeasure};

/// Which statistics to compute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsOptions {
    pub ripley_thresholds: Vec<f64>,
    pub energy: bool,
    pub spacing: bool,
    pub covering_mesh: Option<f64>,
    pub discrepancy_caps: Option<usize>,
    pub seed: u64,
    pub histogram: HistogramSpec,
    /// Energy is refused above this many unordered pairs unless `force` is set.
    pub max_energy_pairs: u64,
    pub force: bool,
}

impl Default for StatsOptions {
    fn default() -> Self {
        Self {
            ripley_thresholds: Vec::new(),
            energy: true,
            spacing: true,
            covering_mesh: None,
            discrepancy_caps: None,
            seed: 0,
            histogram: HistogramSpec::default(),
            max_energy_pairs: 50_000_000,
            force: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    #[serde(rename = "N")]
    pub n_points: usize,
    pub provenance: Provenance,
    pub energy: Option<f64>,
    pub energy_deviation: Option<f64>,
    pub ripley: Option<RipleyProfile>,
    pub spacing: Option<SpacingMeasure>,
    pub min_spacing: Option<f64>,
    pub covering_radius_estimate: Option<CoveringEstimate>,
    pub discrepancy_estimate: Option<f64>,
}

pub fn compute_report(points: &UnitPointSet, opts: &StatsOptions) -> Result<StatsReport> {
    let n = points.len();
    let nf = n as f64;
    let mut report = StatsReport {
        n_points: n,
        provenance: points.provenance().clone(),
        energy: None,
        energy_deviation: None,
        ripley: None,
        spacing: None,
        min_spacing: None,
        covering_radius_estimate: None,
        discrepancy_estimate: None,
    };
    if opts.energy && n >= 2 {
        let pairs = (n as u64) * (n as u64 - 1) / 2;
        if pairs > opts.max_energy_pairs && !opts.force {
            return Err(Error::BudgetExceeded {
                what: "energy pairs",
                requested: pairs,
                limit: opts.max_energy_pairs,
            });
        }
        let e = energy(points)?;
        report.energy = Some(e);
        report.energy_deviation = Some(e - nf * (nf - 1.0));
    }
    if !opts.ripley_thresholds.is_empty() && n >= 2 {
        report.ripley = Some(ripley(points, &opts.ripley_thresholds)?);
    }
    if opts.spacing && n >= 2 {
        let d = nn_distances(points)?;
        report.min_spacing = Some(d.iter().copied().fold(f64::INFINITY, f64::min));
        report.spacing = Some(spacing_from_distances(&d, points.density_count(), opts.histogram));
    }
    if let Some(mesh) = opts.covering_mesh {
        report.covering_radius_estimate = Some(covering_radius(points, mesh)?);
    }
    if let Some(caps) = opts.discrepancy_caps {
        report.discrepancy_estimate = Some(cap_discrepancy(points, caps, opts.seed)?);
    }
    Ok(report)
}
