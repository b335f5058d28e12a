use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::PairCorrelationTable;
use crate::points::{chord_sq, UnitPointSet};

use super::cap::cap_fraction;
use super::index::SphereGrid;

/// Above this many points, small thresholds use a cell grid.
const BRUTE_FORCE_MAX: usize = 2000;

/// Ordered-pair counts `K̂_r = #{i ≠ j : |P_i − P_j| < r}` on a threshold grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RipleyProfile {
    pub n_points: usize,
    pub thresholds: Vec<f64>,
    pub counts: Vec<u64>,
    /// `K̂_r / (N²r²/4)` on S², `K̂_r / (N(N−1)V(r))` otherwise.
    pub normalized: Vec<f64>,
}

impl RipleyProfile {
    fn build(sphere_dim: usize, n: usize, thresholds: Vec<f64>, counts: Vec<u64>) -> Result<Self> {
        let nf = n as f64;
        let normalized = thresholds
            .iter()
            .zip(&counts)
            .map(|(&r, &c)| {
                let expected = if sphere_dim == 2 {
                    nf * nf * r * r / 4.0
                } else {
                    nf * (nf - 1.0) * cap_fraction(sphere_dim, r)?
                };
                Ok(c as f64 / expected)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n_points: n, thresholds, counts, normalized })
    }

    /// Exact profile of a projected arithmetic set from its `A(n, t)` table,
    /// with thresholds given as rationals `r² = num/den`.
    pub fn from_pair_correlation(
        table: &PairCorrelationTable,
        sphere_dim: usize,
        thresholds_sq: &[(u64, u64)],
    ) -> Result<Self> {
        let n = table.get(table.n as i64) as usize;
        let thresholds: Vec<f64> =
            thresholds_sq.iter().map(|&(p, q)| (p as f64 / q as f64).sqrt()).collect();
        check_thresholds(&thresholds)?;
        let counts = thresholds_sq.iter().map(|&(p, q)| table.ripley_count(p, q)).collect();
        Self::build(sphere_dim, n, thresholds, counts)
    }
}

fn check_thresholds(thresholds: &[f64]) -> Result<()> {
    for &r in thresholds {
        if !(r > 0.0 && r <= 2.0) {
            return Err(Error::Domain { value: r, domain: "threshold in (0, 2]" });
        }
    }
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("thresholds must be strictly increasing".into()));
    }
    Ok(())
}

/// Geometric `K̂_r` for every threshold, from floating point chord distances.
pub fn ripley(points: &UnitPointSet, thresholds: &[f64]) -> Result<RipleyProfile> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    check_thresholds(thresholds)?;
    let sq: Vec<f64> = thresholds.iter().map(|r| r * r).collect();
    // bump[k] counts pairs whose first qualifying threshold is k.
    let mut bump = vec![0u64; sq.len() + 1];
    let mut record = |d2: f64| {
        let k = sq.partition_point(|&t| t <= d2);
        bump[k] += 2;
    };
    let r_max = *thresholds.last().unwrap_or(&0.0);
    if n <= BRUTE_FORCE_MAX || r_max > 0.5 {
        for i in 0..n {
            let p = points.point(i);
            for j in i + 1..n {
                record(chord_sq(p, points.point(j)));
            }
        }
    } else {
        let grid = SphereGrid::for_radius(points, r_max);
        let r2 = r_max * r_max;
        for i in 0..n {
            grid.for_each_candidate(points.point(i), r_max, |j, d2| {
                if j > i && d2 < r2 {
                    record(d2);
                }
            });
        }
    }
    let mut counts = Vec::with_capacity(sq.len());
    let mut acc = 0;
    for b in &bump[..sq.len()] {
        acc += b;
        counts.push(acc);
    }
    RipleyProfile::build(points.sphere_dim(), n, thresholds.to_vec(), counts)
}
