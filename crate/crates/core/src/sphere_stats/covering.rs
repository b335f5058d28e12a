//! Covering radius `M = max_{z ∈ S^k} min_j |z − P_j|`.
//!
//! The sphere is the radial image of the faces of the cube `[-1, 1]^d`.
//! Radial projection is 1-Lipschitz from the faces (they lie outside the
//! unit ball), and so is `z ↦ min_j |z − P_j|`. A face box with half-diagonal
//! `ρ` whose centre probe sees distance `f` therefore cannot contain a point
//! farther than `f + ρ` from the configuration. Boxes are refined best-first
//! until no box can beat the best probe by more than `mesh`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::{Provenance, UnitPointSet};

use super::index::SphereGrid;

/// Default cap on probe evaluations.
pub const DEFAULT_MAX_PROBES: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveringEstimate {
    /// Distance from the best probe to the configuration; `estimate <= M`.
    pub estimate: f64,
    /// Certified `M <= estimate + error_bound`, with `error_bound <= mesh`.
    pub error_bound: f64,
    pub probes: usize,
}

struct FaceBox {
    upper: f64,
    axis: usize,
    sign: f64,
    center: [f64; 3],
    half: f64,
}

impl PartialEq for FaceBox {
    fn eq(&self, other: &Self) -> bool {
        self.upper.total_cmp(&other.upper) == Ordering::Equal
    }
}
impl Eq for FaceBox {}
impl PartialOrd for FaceBox {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FaceBox {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper.total_cmp(&other.upper)
    }
}

pub fn covering_radius(points: &UnitPointSet, mesh: f64) -> Result<CoveringEstimate> {
    covering_radius_with_budget(points, mesh, DEFAULT_MAX_PROBES)
}

pub fn covering_radius_with_budget(
    points: &UnitPointSet,
    mesh: f64,
    max_probes: usize,
) -> Result<CoveringEstimate> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    if !(mesh > 0.0) {
        return Err(Error::Domain { value: mesh, domain: "mesh > 0" });
    }
    let d = points.ambient_dim();
    let face_dim = d - 1;
    let diag = (face_dim as f64).sqrt();
    let grid = SphereGrid::new(points);
    let mut probe = vec![0.0; d];
    let mut probes = 0usize;
    let mut best = 0.0f64;

    let mut eval = |axis: usize, sign: f64, center: &[f64; 3], probes: &mut usize| -> f64 {
        let mut k = 0;
        for (i, slot) in probe.iter_mut().enumerate() {
            if i == axis {
                *slot = sign;
            } else {
                *slot = center[k];
                k += 1;
            }
        }
        let norm = probe.iter().map(|v| v * v).sum::<f64>().sqrt();
        probe.iter_mut().for_each(|v| *v /= norm);
        *probes += 1;
        grid.nearest(&probe, None).expect("nonempty").1
    };

    let mut heap = BinaryHeap::new();
    for axis in 0..d {
        for sign in [-1.0, 1.0] {
            let center = [0.0; 3];
            let f = eval(axis, sign, &center, &mut probes);
            best = best.max(f);
            heap.push(FaceBox { upper: f + diag, axis, sign, center, half: 1.0 });
        }
    }
    let children = 1usize << face_dim;
    while let Some(top) = heap.peek() {
        if top.upper <= best + mesh {
            break;
        }
        if probes + children > max_probes {
            return Err(Error::BudgetExceeded {
                what: "covering probes",
                requested: (probes + children) as u64,
                limit: max_probes as u64,
            });
        }
        let b = heap.pop().unwrap();
        let half = b.half / 2.0;
        for c in 0..children {
            let mut center = b.center;
            for (i, slot) in center.iter_mut().take(face_dim).enumerate() {
                *slot += if c >> i & 1 == 1 { half } else { -half };
            }
            let f = eval(b.axis, b.sign, &center, &mut probes);
            best = best.max(f);
            let upper = f + half * diag;
            if upper > best + mesh {
                heap.push(FaceBox { upper, axis: b.axis, sign: b.sign, center, half });
            }
        }
    }
    let top = heap.peek().map_or(best, |b| b.upper);
    Ok(CoveringEstimate { estimate: best, error_bound: (top - best).clamp(0.0, mesh), probes })
}

/// Chord distance from the pole `(1, 0, 0, 0)` to a point with first
/// coordinate `a/√n`: `√(2 − 2a/√n)`, written to avoid cancellation near `a = √n`.
fn pole_distance(a: i64, n: u64) -> f64 {
    let root = (n as f64).sqrt();
    if a > 0 {
        let gap = (n as i128 - (a as i128) * (a as i128)) as f64;
        (2.0 * gap / (root * (root + a as f64))).sqrt()
    } else {
        (2.0 - 2.0 * a as f64 / root).sqrt()
    }
}

/// Half the largest gap between consecutive realized distances to the pole.
///
/// A sphere point at the middle of an empty band of pole distances is at
/// least half the band width from every point (triangle inequality), so the
/// result is a certified lower bound for the covering radius.
pub fn pole_annulus_gap_from_coords(n: u64, first_coords: &[i64]) -> f64 {
    let mut r: Vec<f64> = first_coords.iter().map(|&a| pole_distance(a, n)).collect();
    r.sort_by(f64::total_cmp);
    r.dedup();
    r.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max) / 2.0
}

/// Pole-annulus bound for the projected solutions of `x_1² + … + x_4² = n`,
/// computed from realized first coordinates without enumerating the set.
pub fn pole_annulus_gap_for(n: u64) -> f64 {
    pole_annulus_gap_from_coords(n, &crate::lattice::realized_first_coords(n))
}

/// Pole-annulus bound read off a projected arithmetic set on `S³`.
pub fn pole_annulus_gap(points: &UnitPointSet) -> Result<f64> {
    let Provenance::Arithmetic { n } = *points.provenance() else {
        return Err(Error::InvalidArgument("pole annulus gap needs an arithmetic set".into()));
    };
    if points.ambient_dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: points.ambient_dim() });
    }
    let root = (n as f64).sqrt();
    let mut firsts: Vec<i64> = points.points().map(|p| (p[0] * root).round() as i64).collect();
    firsts.sort_unstable();
    firsts.dedup();
    Ok(pole_annulus_gap_from_coords(n, &firsts))
}
