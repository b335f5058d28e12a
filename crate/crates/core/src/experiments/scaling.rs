use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{sample_uniform_sphere, split_seed};
use crate::error::{Error, Result};
use crate::lattice::EnumerationLimits;
use crate::numtheory::{four_square_count, is_prime};
use crate::sphere_stats::{covering_radius, min_spacing, pole_annulus_gap_for};

use super::arithmetic_points;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalingTarget {
    #[serde(rename = "min_spacing_S2")]
    MinSpacingS2,
    #[serde(rename = "min_spacing_S3")]
    MinSpacingS3,
    #[serde(rename = "covering_S3")]
    CoveringS3,
    /// Pole annulus gap of the four-square set, a lower bound for its covering radius.
    #[serde(rename = "covering_arith_S3")]
    CoveringArithS3,
    #[serde(rename = "min_spacing_arith_S3")]
    MinSpacingArithS3,
}

impl ScalingTarget {
    pub const ALL: [Self; 5] = [
        Self::MinSpacingS2,
        Self::MinSpacingS3,
        Self::CoveringS3,
        Self::CoveringArithS3,
        Self::MinSpacingArithS3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::MinSpacingS2 => "min_spacing_S2",
            Self::MinSpacingS3 => "min_spacing_S3",
            Self::CoveringS3 => "covering_S3",
            Self::CoveringArithS3 => "covering_arith_S3",
            Self::MinSpacingArithS3 => "min_spacing_arith_S3",
        }
    }

    pub fn is_arithmetic(self) -> bool {
        matches!(self, Self::CoveringArithS3 | Self::MinSpacingArithS3)
    }

    /// Grid of `N` for random targets, of odd primes `n` for arithmetic ones.
    pub fn default_grid(self) -> Vec<u64> {
        match self {
            Self::CoveringArithS3 => {
                (0..=10).map(|j| next_prime((1e3 * 10f64.powf(j as f64 / 2.0)) as u64)).collect()
            }
            Self::MinSpacingArithS3 => (0..8).map(|j| next_prime(1000 << j)).collect(),
            _ => (8..=14).map(|j| 1u64 << j).collect(),
        }
    }
}

impl fmt::Display for ScalingTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalingTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scaling target {s:?}")))
    }
}

fn next_prime(m: u64) -> u64 {
    (m.max(3) | 1..).step_by(2).find(|&k| is_prime(k)).expect("a prime exists")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingParams {
    pub target: ScalingTarget,
    pub grid: Vec<u64>,
    /// Configurations per grid point (random targets only).
    pub seeds: usize,
    pub seed: u64,
    /// Covering mesh; `None` uses `0.02·N^{−1/3}`.
    pub mesh: Option<f64>,
}

impl ScalingParams {
    pub fn new(target: ScalingTarget) -> Self {
        Self { target, grid: target.default_grid(), seeds: 20, seed: 0, mesh: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    /// `N` for random targets, `n` for arithmetic ones.
    pub param: u64,
    #[serde(rename = "N")]
    pub n_points: usize,
    pub values: Vec<f64>,
    /// Mean of `ln(value)` over `values`.
    pub mean_log: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub target: ScalingTarget,
    pub points: Vec<ScalingPoint>,
    /// Least-squares fit `mean_log ≈ intercept + slope · ln N`.
    pub slope: f64,
    pub intercept: f64,
}

/// Ordinary least squares `y ≈ a + b·x`; returns `(b, a)`.
pub fn least_squares(x: &[f64], y: &[f64]) -> (f64, f64) {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let b = sxy / sxx;
    (b, my - b * mx)
}

pub fn scaling(p: &ScalingParams, limits: &EnumerationLimits) -> Result<ScalingReport> {
    if p.grid.len() < 2 {
        return Err(Error::InvalidArgument("scaling grid needs at least two points".into()));
    }
    if !p.target.is_arithmetic() && p.seeds == 0 {
        return Err(Error::InvalidArgument("seeds must be at least 1".into()));
    }
    let mut points = Vec::with_capacity(p.grid.len());
    for (gi, &param) in p.grid.iter().enumerate() {
        let (n_points, values) = match p.target {
            ScalingTarget::CoveringArithS3 => {
                if param < 2 || param % 2 == 0 {
                    return Err(Error::InvalidArgument(format!("expected odd n >= 3, got {param}")));
                }
                (four_square_count(param) as usize, vec![pole_annulus_gap_for(param)])
            }
            ScalingTarget::MinSpacingArithS3 => {
                let pts = arithmetic_points(param, 4, limits)?;
                (pts.len(), vec![min_spacing(&pts)?])
            }
            target => {
                let n = usize::try_from(param)
                    .map_err(|_| Error::InvalidArgument(format!("N = {param} too large")))?;
                let k = if target == ScalingTarget::MinSpacingS2 { 2 } else { 3 };
                let values = (0..p.seeds as u64)
                    .map(|i| {
                        let s = split_seed(p.seed, (gi as u64) << 32 | i);
                        let pts = sample_uniform_sphere(n, k, s)?;
                        if target == ScalingTarget::CoveringS3 {
                            let mesh = p.mesh.unwrap_or(0.02 * (n as f64).powf(-1.0 / 3.0));
                            Ok(covering_radius(&pts, mesh)?.estimate)
                        } else {
                            min_spacing(&pts)
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                (n, values)
            }
        };
        let mean_log = values.iter().map(|v| v.ln()).sum::<f64>() / values.len() as f64;
        points.push(ScalingPoint { param, n_points, values, mean_log });
    }
    let x: Vec<f64> = points.iter().map(|q| (q.n_points as f64).ln()).collect();
    let y: Vec<f64> = points.iter().map(|q| q.mean_log).collect();
    let (slope, intercept) = least_squares(&x, &y);
    Ok(ScalingReport { target: p.target, points, slope, intercept })
}
