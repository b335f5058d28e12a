use serde::{Deserialize, Serialize};

use crate::baselines::{hex_patch_with, sample_uniform_sphere};
use crate::error::{Error, Result};
use crate::lattice::EnumerationLimits;
use crate::points::UnitPointSet;
use crate::sphere_stats::{ks_exponential, spacing_measure_with, Histogram, HistogramSpec};

use super::arithmetic_points;

/// Planar coordinates of the points inside one cap window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Patch {
    pub label: String,
    pub xy: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Data {
    pub n: u64,
    #[serde(rename = "N")]
    pub n_points: usize,
    /// Chord radius of every window.
    pub radius: f64,
    pub arithmetic: Patch,
    pub random: Patch,
    pub rigid: Patch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig2Data {
    pub n: u64,
    #[serde(rename = "N")]
    pub n_points: usize,
    pub mean: f64,
    pub ks: f64,
    pub histogram: Histogram,
}

/// Fixed generic window centre for the arithmetic and random panels.
const CENTER: [f64; 3] = [0.36, 0.48, 0.8];

/// Points of `set` (on S²) within chord distance `radius` of the unit vector
/// `center`, mapped by the Lambert azimuthal equal-area projection about
/// `center`: a point at chord distance `ρ` lands at planar radius `ρ`.
pub fn lambert_window(set: &UnitPointSet, center: [f64; 3], radius: f64) -> Result<Vec<[f64; 2]>> {
    if set.ambient_dim() != 3 {
        return Err(Error::InvalidDimension(set.ambient_dim()));
    }
    let c = center;
    // Any vector not parallel to c, orthonormalized.
    let seed = if c[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = dot3(seed, c);
    let e1 = normalize([seed[0] - d * c[0], seed[1] - d * c[1], seed[2] - d * c[2]]);
    let e2 = [c[1] * e1[2] - c[2] * e1[1], c[2] * e1[0] - c[0] * e1[2], c[0] * e1[1] - c[1] * e1[0]];
    let mut out = Vec::new();
    for p in set.points() {
        let p = [p[0], p[1], p[2]];
        let rho = ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2)).sqrt();
        if rho >= radius {
            continue;
        }
        let (u, v) = (dot3(p, e1), dot3(p, e2));
        let t = u.hypot(v);
        out.push(if t == 0.0 { [0.0, 0.0] } else { [rho * u / t, rho * v / t] });
    }
    Ok(out)
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    let s = dot3(a, a).sqrt();
    [a[0] / s, a[1] / s, a[2] / s]
}

/// Three cap windows expected to hold `window_points` points each: the
/// projected lattice points of `n`, a uniform sample of the same size, and a
/// triangular patch at the same density.
pub fn fig1(n: u64, window_points: usize, seed: u64, limits: &EnumerationLimits) -> Result<Fig1Data> {
    let arith = arithmetic_points(n, 3, limits)?;
    let big_n = arith.len();
    if window_points == 0 || window_points > big_n {
        return Err(Error::InvalidArgument(format!("window must hold 1..={big_n} points")));
    }
    // Cap fraction r²/4 times N equals the target count.
    let radius = 2.0 * (window_points as f64 / big_n as f64).sqrt();
    let center = normalize(CENTER);
    let random = sample_uniform_sphere(big_n, 2, seed)?;
    let hex = hex_patch_with(big_n, (4 * window_points).min(big_n))?;
    Ok(Fig1Data {
        n,
        n_points: big_n,
        radius,
        arithmetic: Patch { label: "arithmetic".into(), xy: lambert_window(&arith, center, radius)? },
        random: Patch { label: "random".into(), xy: lambert_window(&random, center, radius)? },
        rigid: Patch { label: "rigid".into(), xy: lambert_window(&hex, [0.0, 0.0, 1.0], radius)? },
    })
}

/// Spacing histogram of the projected lattice points of `n` on S².
pub fn fig2(n: u64, spec: HistogramSpec, limits: &EnumerationLimits) -> Result<Fig2Data> {
    let pts = arithmetic_points(n, 3, limits)?;
    let m = spacing_measure_with(&pts, spec)?;
    Ok(Fig2Data {
        n,
        n_points: pts.len(),
        mean: m.mean,
        ks: ks_exponential(&m.raw),
        histogram: m.histogram,
    })
}
