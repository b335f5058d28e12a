use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_solutions_with, pair_correlation, project_to_sphere, shifted_count, EnumerationLimits,
};
use crate::numtheory::is_squarefree;
use crate::sphere_stats::{cap_fraction, covering_radius};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleParams {
    pub r_min: u64,
    pub r_max: u64,
    pub dim: usize,
    /// Threshold rule `r = n^{δ − 1/2}`.
    pub delta: f64,
    pub squarefree_only: bool,
    /// Residues of `n mod 8` to skip.
    pub exclude_mod_8: Vec<u64>,
    /// Emit rows with `N = 0` too.
    pub include_empty: bool,
    pub covering_mesh: Option<f64>,
    pub shifts: Vec<Vec<i64>>,
    /// Band for the reported fraction of normalized `K̂_r`.
    pub band: [f64; 2],
}

impl Default for EnsembleParams {
    fn default() -> Self {
        Self {
            r_min: 1,
            r_max: 1000,
            dim: 3,
            delta: 0.2,
            squarefree_only: false,
            exclude_mod_8: Vec::new(),
            include_empty: false,
            covering_mesh: None,
            shifts: Vec::new(),
            band: [0.5, 2.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRow {
    pub n: u64,
    #[serde(rename = "N")]
    pub n_points: usize,
    pub squarefree: bool,
    pub n_mod_8: u64,
    pub r: f64,
    pub k_hat: u64,
    /// `N²r²/4` on S², `N(N−1)V(r)` on S³.
    pub expected: f64,
    /// `k_hat / expected`; absent when `expected = 0`.
    pub normalized: Option<f64>,
    /// `k_hat − expected`.
    pub deviation: f64,
    /// Minimum spacing times `N`.
    pub m_times_n: Option<f64>,
    pub covering: Option<f64>,
    /// Running mean and sample variance of `deviation` over rows so far.
    pub running_mean: f64,
    pub running_var: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftSum {
    pub shift: Vec<i64>,
    /// `Σ K_h(E(n))` over the `n` kept by the filters.
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub rows: usize,
    pub mean_deviation: f64,
    pub var_deviation: f64,
    /// `mean_deviation / √var_deviation`.
    pub normalized_mean: Option<f64>,
    pub median_normalized: Option<f64>,
    pub band: [f64; 2],
    pub fraction_in_band: Option<f64>,
    pub shift_sums: Vec<ShiftSum>,
}

impl EnsembleSummary {
    /// Two-pass recomputation from emitted rows.
    pub fn from_rows(rows: &[EnsembleRow], band: [f64; 2], shift_sums: Vec<ShiftSum>) -> Self {
        let k = rows.len();
        let mean = if k == 0 { 0.0 } else { rows.iter().map(|r| r.deviation).sum::<f64>() / k as f64 };
        let var = if k < 2 {
            0.0
        } else {
            rows.iter().map(|r| (r.deviation - mean).powi(2)).sum::<f64>() / (k - 1) as f64
        };
        let mut norm: Vec<f64> = rows.iter().filter_map(|r| r.normalized).collect();
        norm.sort_by(f64::total_cmp);
        let median = match norm.len() {
            0 => None,
            m if m % 2 == 1 => Some(norm[m / 2]),
            m => Some(0.5 * (norm[m / 2 - 1] + norm[m / 2])),
        };
        let fraction = (!norm.is_empty()).then(|| {
            norm.iter().filter(|&&z| z >= band[0] && z <= band[1]).count() as f64 / norm.len() as f64
        });
        Self {
            rows: k,
            mean_deviation: mean,
            var_deviation: var,
            normalized_mean: (var > 0.0).then(|| mean / var.sqrt()),
            median_normalized: median,
            band,
            fraction_in_band: fraction,
            shift_sums,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub params: EnsembleParams,
    pub rows: Vec<EnsembleRow>,
    pub summary: EnsembleSummary,
}

/// Per-`n` Ripley counts at `r = n^{δ−1/2}` over `[r_min, r_max]`, computed
/// exactly from `A(n, t)`: a pair with inner product `t` is closer than `r`
/// iff `2(n − t) < n·r² = n^{2δ}`.
pub fn ensemble(p: &EnsembleParams, limits: &EnumerationLimits) -> Result<EnsembleReport> {
    if !(3..=4).contains(&p.dim) {
        return Err(Error::InvalidDimension(p.dim));
    }
    if !(p.delta > 0.0 && p.delta < 0.5) {
        return Err(Error::Domain { value: p.delta, domain: "delta in (0, 1/2)" });
    }
    for h in &p.shifts {
        if h.len() != p.dim {
            return Err(Error::DimensionMismatch { expected: p.dim, got: h.len() });
        }
        if h.iter().all(|&c| c == 0) {
            return Err(Error::ZeroShift);
        }
    }
    let mut rows = Vec::new();
    let mut totals = vec![0u64; p.shifts.len()];
    let (mut count, mut mean, mut m2) = (0u64, 0.0f64, 0.0f64);
    for n in p.r_min.max(1)..=p.r_max {
        let squarefree = is_squarefree(n);
        if (p.squarefree_only && !squarefree) || p.exclude_mod_8.contains(&(n % 8)) {
            continue;
        }
        let s = enumerate_solutions_with(n, p.dim, limits)?;
        for (t, h) in totals.iter_mut().zip(&p.shifts) {
            if !s.is_empty() {
                *t += shifted_count(&s, h)?;
            }
        }
        if s.is_empty() && !p.include_empty {
            continue;
        }
        let big_n = s.len() as f64;
        let r = (n as f64).powf(p.delta - 0.5);
        let (k_hat, m_times_n, covering) = if s.is_empty() {
            (0, None, None)
        } else {
            let table = pair_correlation(&s)?;
            let bound = (n as f64).powf(2.0 * p.delta);
            let k_hat: u64 = table
                .entries
                .range(..n as i64)
                .filter(|(&t, _)| ((2 * (n as i64 - t)) as f64) < bound)
                .map(|(_, &c)| c)
                .sum();
            let m = table.min_sq_distance().map(|d2| (d2 as f64 / n as f64).sqrt() * big_n);
            let cov = match p.covering_mesh {
                Some(mesh) => Some(covering_radius(&project_to_sphere(&s)?, mesh)?.estimate),
                None => None,
            };
            (k_hat, m, cov)
        };
        let expected = if p.dim == 3 {
            big_n * big_n * r * r / 4.0
        } else {
            big_n * (big_n - 1.0) * cap_fraction(3, r)?
        };
        let deviation = k_hat as f64 - expected;
        count += 1;
        let delta = deviation - mean;
        mean += delta / count as f64;
        m2 += delta * (deviation - mean);
        rows.push(EnsembleRow {
            n,
            n_points: s.len(),
            squarefree,
            n_mod_8: n % 8,
            r,
            k_hat,
            expected,
            normalized: (expected > 0.0).then(|| k_hat as f64 / expected),
            deviation,
            m_times_n,
            covering,
            running_mean: mean,
            running_var: if count > 1 { m2 / (count - 1) as f64 } else { 0.0 },
        });
    }
    let shift_sums =
        p.shifts.iter().zip(totals).map(|(h, total)| ShiftSum { shift: h.clone(), total }).collect();
    let summary = EnsembleSummary::from_rows(&rows, p.band, shift_sums);
    Ok(EnsembleReport { params: p.clone(), rows, summary })
}
