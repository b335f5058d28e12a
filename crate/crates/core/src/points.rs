//! Floating point configurations on the unit sphere `S^k ⊂ R^{k+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a configuration came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Projection of the integer solutions of `|x|² = n`.
    Arithmetic { n: u64 },
    /// Independent uniform points drawn from a seeded generator.
    Random { seed: u64 },
    /// Triangular-lattice patch whose density matches `n_target` points per sphere.
    Rigid { n_target: usize, spacing: f64 },
    /// Read from a file or built by hand.
    External,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitPointSet {
    ambient: usize,
    coords: Vec<f64>,
    provenance: Provenance,
}

impl UnitPointSet {
    /// Wraps flat coordinates (`ambient` values per point). Each point must
    /// have unit norm to within `1e-9`.
    pub fn new(ambient: usize, coords: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if !(2..=4).contains(&ambient) {
            return Err(Error::InvalidDimension(ambient));
        }
        if coords.len() % ambient != 0 {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates is not a multiple of {ambient}",
                coords.len()
            )));
        }
        for (i, p) in coords.chunks_exact(ambient).enumerate() {
            let norm2: f64 = p.iter().map(|v| v * v).sum();
            if (norm2 - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "point {i} has squared norm {norm2}, expected 1"
                )));
            }
        }
        Ok(Self { ambient, coords, provenance })
    }

    pub(crate) fn from_raw(ambient: usize, coords: Vec<f64>, provenance: Provenance) -> Self {
        debug_assert_eq!(coords.len() % ambient, 0);
        Self { ambient, coords, provenance }
    }

    /// Dimension of the ambient Euclidean space (`k + 1` for `S^k`).
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension `k` of the sphere `S^k`.
    pub fn sphere_dim(&self) -> usize {
        self.ambient - 1
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.ambient)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The point count used for density scalings such as `(N/4)·d²`.
    ///
    /// For a rigid patch this is the full-sphere count the patch density
    /// stands for, not the number of points actually in the patch.
    pub fn density_count(&self) -> usize {
        match self.provenance {
            Provenance::Rigid { n_target, .. } => n_target,
            _ => self.len(),
        }
    }

    /// Applies a linear map (row-major `ambient × ambient`) to every point.
    pub fn transformed(&self, matrix: &[f64]) -> Self {
        let d = self.ambient;
        assert_eq!(matrix.len(), d * d);
        let mut out = Vec::with_capacity(self.coords.len());
        for p in self.points() {
            for row in matrix.chunks_exact(d) {
                out.push(row.iter().zip(p).map(|(a, b)| a * b).sum());
            }
        }
        Self::from_raw(d, out, self.provenance.clone())
    }

    /// Subset of the points selected by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&[f64]) -> bool) -> Self {
        let coords = self
            .points()
            .filter(|p| keep(p))
            .flatten()
            .copied()
            .collect();
        Self::from_raw(self.ambient, coords, self.provenance.clone())
    }
}

#[inline]
pub(crate) fn chord_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn chord(a: &[f64], b: &[f64]) -> f64 {
    chord_sq(a, b).sqrt()
}
