//! Comparison ensembles: the binomial process on `S^k`, rigid triangular
//! patches, and seeded Monte Carlo summaries of a statistic.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::{Provenance, UnitPointSet};
use crate::sphere_stats::{
    cap_discrepancy, covering_radius, energy, ks_exponential, min_spacing, ripley, spacing_measure,
};

/// Default number of points kept in a rigid patch.
pub const DEFAULT_PATCH_POINTS: usize = 400;

/// The portable generator used for every random baseline.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of run `index` under master seed `master`:
/// `mix64(master + (index + 1)·0x9E3779B97F4A7C15)`.
pub fn split_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Fills `out` with a uniform random unit vector (normalized Gaussians).
pub fn random_direction<R: rand::Rng>(rng: &mut R, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for v in out.iter_mut() {
            *v = StandardNormal.sample(rng);
            norm2 += *v * *v;
        }
        if norm2 > 1e-300 {
            let inv = 1.0 / norm2.sqrt();
            out.iter_mut().for_each(|v| *v *= inv);
            return;
        }
    }
}

/// `n` independent uniform points on `S^k`, `k ∈ {1, 2, 3}`.
pub fn sample_uniform_sphere(n: usize, k: usize, seed: u64) -> Result<UnitPointSet> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidDimension(k + 1));
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let d = k + 1;
    let mut rng = seeded_rng(seed);
    let mut coords = vec![0.0; n * d];
    for p in coords.chunks_exact_mut(d) {
        random_direction(&mut rng, p);
    }
    Ok(UnitPointSet::from_raw(d, coords, Provenance::Random { seed }))
}

/// Triangular-lattice patch at the density of `n_target` points per sphere.
pub fn hex_patch(n_target: usize) -> Result<UnitPointSet> {
    hex_patch_with(n_target, DEFAULT_PATCH_POINTS.min(n_target))
}

/// Triangular lattice in the plane with one point per `4π/n_target` of area,
/// cut to a disc holding about `patch_points` points, and carried to S² by
/// the inverse Lambert azimuthal equal-area map about the north pole.
///
/// The inverse map sends a plane point at radius `ρ` to the sphere point at
/// chord distance `ρ` from the pole, and preserves area, so the patch
/// density on the sphere equals the planar density.
pub fn hex_patch_with(n_target: usize, patch_points: usize) -> Result<UnitPointSet> {
    if n_target < 7 {
        return Err(Error::InvalidArgument(format!("hex patch needs n_target >= 7, got {n_target}")));
    }
    if patch_points == 0 || patch_points > n_target {
        return Err(Error::InvalidArgument("patch_points must be in 1..=n_target".into()));
    }
    let nt = n_target as f64;
    // Cell area (√3/2)s² equals 4π/N.
    let spacing = (8.0 * PI / (3f64.sqrt() * nt)).sqrt();
    let radius = (2.0 * (patch_points as f64 / nt).sqrt()).min(2.0);
    let reach = (radius / (spacing * 3f64.sqrt() / 2.0)).ceil() as i64 + 1;
    let mut coords = Vec::new();
    for j in -reach..=reach {
        for i in -2 * reach..=2 * reach {
            let x = spacing * (i as f64 + 0.5 * j as f64);
            let y = spacing * (3f64.sqrt() / 2.0) * j as f64;
            let rho2 = x * x + y * y;
            if rho2 > radius * radius {
                continue;
            }
            let scale = (1.0 - rho2 / 4.0).sqrt();
            coords.extend([x * scale, y * scale, 1.0 - rho2 / 2.0]);
        }
    }
    Ok(UnitPointSet::from_raw(3, coords, Provenance::Rigid { n_target, spacing }))
}

/// A statistic evaluated on each random configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Statistic {
    /// `E − N(N−1)`.
    EnergyDeviation,
    /// `K̂_r` at a single threshold.
    Ripley { r: f64 },
    MinSpacing,
    Covering { mesh: f64 },
    /// KS distance of the spacing measure to `1 − e^{−x}`.
    SpacingKs,
    Discrepancy { caps: usize },
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Self::EnergyDeviation => "energy_deviation",
            Self::Ripley { .. } => "ripley",
            Self::MinSpacing => "min_spacing",
            Self::Covering { .. } => "covering",
            Self::SpacingKs => "spacing_ks",
            Self::Discrepancy { .. } => "discrepancy",
        }
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut p = BTreeMap::new();
        match *self {
            Self::Ripley { r } => {
                p.insert("r".into(), r);
            }
            Self::Covering { mesh } => {
                p.insert("mesh".into(), mesh);
            }
            Self::Discrepancy { caps } => {
                p.insert("caps".into(), caps as f64);
            }
            _ => {}
        }
        p
    }

    pub fn evaluate(&self, points: &UnitPointSet, seed: u64) -> Result<f64> {
        let n = points.len() as f64;
        match *self {
            Self::EnergyDeviation => Ok(energy(points)? - n * (n - 1.0)),
            Self::Ripley { r } => Ok(ripley(points, &[r])?.counts[0] as f64),
            Self::MinSpacing => min_spacing(points),
            Self::Covering { mesh } => Ok(covering_radius(points, mesh)?.estimate),
            Self::SpacingKs => Ok(ks_exponential(&spacing_measure(points)?.raw)),
            Self::Discrepancy { caps } => cap_discrepancy(points, caps, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub n_points: usize,
    pub sphere_dim: usize,
    pub seed: u64,
    pub runs: usize,
    pub values: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation; absent for a single run.
    pub std: Option<f64>,
}

impl MonteCarloSummary {
    pub fn from_values(
        stat: &Statistic,
        n_points: usize,
        sphere_dim: usize,
        seed: u64,
        values: Vec<f64>,
    ) -> Result<Self> {
        let runs = values.len();
        if runs == 0 {
            return Err(Error::InvalidArgument("runs must be at least 1".into()));
        }
        let (mean, std) = mean_std(&values);
        Ok(Self {
            name: stat.name().to_string(),
            params: stat.params(),
            n_points,
            sphere_dim,
            seed,
            runs,
            values,
            mean,
            std,
        })
    }

    /// `std / √runs`, when defined.
    pub fn standard_error(&self) -> Option<f64> {
        self.std.map(|s| s / (self.runs as f64).sqrt())
    }
}

/// Mean and sample standard deviation (absent for fewer than two values).
pub fn mean_std(values: &[f64]) -> (f64, Option<f64>) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = (values.len() > 1).then(|| {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    });
    (mean, std)
}

/// `runs` independent uniform configurations of `n` points on `S^k`; run `i`
/// uses `split_seed(seed, i)` for both the sample and the statistic.
pub fn monte_carlo(
    stat: &Statistic,
    n: usize,
    k: usize,
    runs: usize,
    seed: u64,
) -> Result<MonteCarloSummary> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let values = (0..runs as u64)
        .map(|i| {
            let s = split_seed(seed, i);
            stat.evaluate(&sample_uniform_sphere(n, k, s)?, s)
        })
        .collect::<Result<Vec<_>>>()?;
    MonteCarloSummary::from_values(stat, n, k, seed, values)
}
