use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::{chord_sq, UnitPointSet};

use super::index::SphereGrid;

/// Sets at or below this size use the direct `O(N²)` scan.
const BRUTE_FORCE_MAX: usize = 2_000;

/// Nearest-neighbour chord distance `d_j` of every point, by direct scan.
pub fn nn_distances_brute(points: &UnitPointSet) -> Result<Vec<f64>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut best = vec![f64::INFINITY; n];
    for i in 0..n {
        let p = points.point(i);
        for j in i + 1..n {
            let d2 = chord_sq(p, points.point(j));
            if d2 < best[i] {
                best[i] = d2;
            }
            if d2 < best[j] {
                best[j] = d2;
            }
        }
    }
    Ok(best.into_iter().map(f64::sqrt).collect())
}

/// Nearest-neighbour chord distance `d_j` of every point.
pub fn nn_distances(points: &UnitPointSet) -> Result<Vec<f64>> {
    let n = points.len();
    if n <= BRUTE_FORCE_MAX {
        return nn_distances_brute(points);
    }
    let grid = SphereGrid::new(points);
    Ok((0..n)
        .map(|i| grid.nearest(points.point(i), Some(i)).expect("n >= 2").1)
        .collect())
}

/// `m = min_{i≠j} |P_i − P_j|`. Coincident points give `0`.
pub fn min_spacing(points: &UnitPointSet) -> Result<f64> {
    Ok(nn_distances(points)?.into_iter().fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramSpec {
    pub bins: usize,
    pub max: f64,
}

impl Default for HistogramSpec {
    fn default() -> Self {
        Self { bins: 50, max: 5.0 }
    }
}

/// Uniform bins on `[0, max)` plus an overflow mass for values `>= max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub overflow: f64,
}

impl Histogram {
    pub fn from_values(values: &[f64], spec: HistogramSpec) -> Self {
        let width = spec.max / spec.bins as f64;
        let edges = (0..=spec.bins).map(|i| i as f64 * width).collect();
        let mut counts = vec![0u64; spec.bins];
        let mut over = 0u64;
        for &v in values {
            let b = (v / width).floor();
            if v >= spec.max || b as usize >= spec.bins {
                over += 1;
            } else {
                counts[b.max(0.0) as usize] += 1;
            }
        }
        let total = values.len().max(1) as f64;
        Self {
            edges,
            masses: counts.iter().map(|&c| c as f64 / total).collect(),
            overflow: over as f64 / total,
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum::<f64>() + self.overflow
    }
}

/// Empirical law of the scaled squared spacings `(N/4)·d_j²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingMeasure {
    pub n_points: usize,
    pub raw: Vec<f64>,
    pub mean: f64,
    pub histogram: Histogram,
}

pub fn spacing_measure(points: &UnitPointSet) -> Result<SpacingMeasure> {
    spacing_measure_with(points, HistogramSpec::default())
}

pub fn spacing_measure_with(points: &UnitPointSet, spec: HistogramSpec) -> Result<SpacingMeasure> {
    let d = nn_distances(points)?;
    Ok(spacing_from_distances(&d, points.density_count(), spec))
}

pub(crate) fn spacing_from_distances(d: &[f64], density: usize, spec: HistogramSpec) -> SpacingMeasure {
    let scale = density as f64 / 4.0;
    let raw: Vec<f64> = d.iter().map(|&v| scale * v * v).collect();
    let mean = raw.iter().sum::<f64>() / raw.len().max(1) as f64;
    let histogram = Histogram::from_values(&raw, spec);
    SpacingMeasure { n_points: d.len(), raw, mean, histogram }
}

/// Kolmogorov–Smirnov distance between the empirical law of `values` and
/// the distribution function `cdf`.
pub fn ks_distance(values: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// KS distance to the unit exponential law `1 − e^{−x}`.
pub fn ks_exponential(values: &[f64]) -> f64 {
    ks_distance(values, |x| if x <= 0.0 { 0.0 } else { -(-x).exp_m1() })
}
