//! Uniform cell grid over the ambient cube `[-1, 1]^d` for neighbour queries
//! on the unit sphere.
//!
//! Points are bucketed into cubic cells of side `h` (CSR layout). Nearest
//! queries expand Chebyshev rings of cells around the query cell and stop once
//! the ring lower bound `(k − 1)·h` reaches the best distance found.

use crate::points::{chord_sq, UnitPointSet};

/// Upper bound on the number of cells in the dense grid.
const MAX_CELLS: usize = 1 << 24;

pub struct SphereGrid<'a> {
    points: &'a UnitPointSet,
    dim: usize,
    res: usize,
    cell: f64,
    starts: Vec<u32>,
    members: Vec<u32>,
}

impl<'a> SphereGrid<'a> {
    /// Grid sized for about two points per occupied cell.
    pub fn new(points: &'a UnitPointSet) -> Self {
        Self::with_cell(points, Self::density_cell(points))
    }

    /// Grid for range queries up to radius `r`: cells of side `r`, or coarser
    /// when `r` is below the two-points-per-cell size.
    pub fn for_radius(points: &'a UnitPointSet, r: f64) -> Self {
        Self::with_cell(points, r.max(Self::density_cell(points)))
    }

    fn density_cell(points: &UnitPointSet) -> f64 {
        let d = points.ambient_dim();
        let n = points.len().max(1) as f64;
        // Surface measure of S^{d-1}: 2π (circle), 4π, 2π².
        let area = match d {
            2 => 2.0 * std::f64::consts::PI,
            3 => 4.0 * std::f64::consts::PI,
            _ => 2.0 * std::f64::consts::PI * std::f64::consts::PI,
        };
        (2.0 * area / n).powf(1.0 / (d - 1) as f64)
    }

    /// Grid with cells of side at least `h`.
    pub fn with_cell(points: &'a UnitPointSet, h: f64) -> Self {
        let dim = points.ambient_dim();
        let cap = (MAX_CELLS as f64).powf(1.0 / dim as f64).floor() as usize;
        let res = ((2.0 / h).floor() as usize).clamp(1, cap.max(1));
        let cell = 2.0 / res as f64;
        let total = res.pow(dim as u32);
        let mut counts = vec![0u32; total + 1];
        let ids: Vec<usize> = points.points().map(|p| cell_index(p, res, cell)).collect();
        for &c in &ids {
            counts[c + 1] += 1;
        }
        for i in 0..total {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut members = vec![0u32; ids.len()];
        for (i, &c) in ids.iter().enumerate() {
            members[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }
        Self { points, dim, res, cell, starts: counts, members }
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    fn coords_of(&self, q: &[f64]) -> [isize; 4] {
        let mut c = [0isize; 4];
        for (slot, &v) in c.iter_mut().zip(q) {
            *slot = axis_cell(v, self.res, self.cell) as isize;
        }
        c
    }

    fn flat(&self, c: &[isize]) -> usize {
        c[..self.dim].iter().fold(0usize, |acc, &v| acc * self.res + v as usize)
    }

    fn bucket(&self, c: &[isize]) -> &[u32] {
        let f = self.flat(c);
        &self.members[self.starts[f] as usize..self.starts[f + 1] as usize]
    }

    /// Visits every in-range cell at Chebyshev distance exactly `k` from `center`.
    fn for_each_ring_cell(&self, center: &[isize; 4], k: isize, mut f: impl FnMut(&[isize])) {
        let d = self.dim;
        if k == 0 {
            f(&center[..d]);
            return;
        }
        let last = d - 1;
        let res = self.res as isize;
        let (mut lo, mut hi) = ([0isize; 4], [0isize; 4]);
        for i in 0..d {
            lo[i] = (center[i] - k).max(0);
            hi[i] = (center[i] + k).min(res - 1);
        }
        let mut cur = lo;
        loop {
            // Unless a leading axis is on the ring, only the two end cells
            // along the last axis are.
            if (0..last).any(|i| (cur[i] - center[i]).abs() == k) {
                for v in lo[last]..=hi[last] {
                    cur[last] = v;
                    f(&cur[..d]);
                }
            } else {
                for v in [center[last] - k, center[last] + k] {
                    if (lo[last]..=hi[last]).contains(&v) {
                        cur[last] = v;
                        f(&cur[..d]);
                    }
                }
            }
            let mut axis = last;
            loop {
                if axis == 0 {
                    return;
                }
                axis -= 1;
                if cur[axis] < hi[axis] {
                    cur[axis] += 1;
                    break;
                }
                cur[axis] = lo[axis];
            }
        }
    }

    /// Nearest stored point to `q`, skipping index `skip`. Returns
    /// `(index, chord distance)`, or `None` if no other point exists.
    pub fn nearest(&self, q: &[f64], skip: Option<usize>) -> Option<(usize, f64)> {
        let center = self.coords_of(q);
        let mut best: Option<(usize, f64)> = None;
        let max_ring = self.res as isize;
        for k in 0..=max_ring {
            if let Some((_, d2)) = best {
                let lb = (k - 1) as f64 * self.cell;
                if k >= 1 && d2 <= lb * lb {
                    break;
                }
            }
            self.for_each_ring_cell(&center, k, |c| {
                for &j in self.bucket(c) {
                    let j = j as usize;
                    if Some(j) == skip {
                        continue;
                    }
                    let d2 = chord_sq(q, self.points.point(j));
                    if best.is_none_or(|(bj, bd)| d2 < bd || (d2 == bd && j < bj)) {
                        best = Some((j, d2));
                    }
                }
            });
        }
        best.map(|(j, d2)| (j, d2.sqrt()))
    }

    /// Calls `f(j, chord²)` for every stored point within chord distance `r`
    /// of `q` (and possibly some slightly farther ones; callers filter).
    pub fn for_each_candidate(&self, q: &[f64], r: f64, mut f: impl FnMut(usize, f64)) {
        let center = self.coords_of(q);
        let reach = (r / self.cell).ceil() as isize;
        for k in 0..=reach {
            self.for_each_ring_cell(&center, k, |c| {
                for &j in self.bucket(c) {
                    let j = j as usize;
                    f(j, chord_sq(q, self.points.point(j)));
                }
            });
        }
    }
}

#[inline]
fn axis_cell(v: f64, res: usize, cell: f64) -> usize {
    (((v + 1.0) / cell).floor().max(0.0) as usize).min(res - 1)
}

fn cell_index(p: &[f64], res: usize, cell: f64) -> usize {
    p.iter().fold(0usize, |acc, &v| acc * res + axis_cell(v, res, cell))
}
