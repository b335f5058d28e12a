//! Integer solution sets of `x_1² + … + x_t² = n` for `t ∈ {2, 3, 4}`,
//! their projection to the unit sphere, and exact pair-counting objects.

mod enumerate;
pub mod io;
mod pairs;

pub use enumerate::{
    count_solutions, count_solutions_with, enumerate_solutions, enumerate_solutions_with,
    EnumerationLimits,
};
pub use pairs::{
    double_shifted_count, double_shifted_count_brute, pair_correlation, shifted_count,
    PairCorrelationTable,
};

pub(crate) use enumerate::for_each_canonical;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{strip_four_powers, three_squares_representable};
use crate::points::{Provenance, UnitPointSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
}

impl LatticePoint {
    pub fn norm_sq(&self) -> i128 {
        self.coords.iter().map(|&c| c as i128 * c as i128).sum()
    }
}

/// All solutions of `|x|² = n` in dimension `dim`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    n: u64,
    dim: usize,
    coords: Vec<i32>,
}

impl SolutionSet {
    pub(crate) fn from_sorted(n: u64, dim: usize, coords: Vec<i32>) -> Self {
        Self { n, dim, coords }
    }

    /// Builds a set from arbitrary rows, checking norms and distinctness.
    /// Rows are re-sorted into canonical order.
    pub fn from_points(n: u64, dim: usize, coords: Vec<i32>) -> Result<Self> {
        if !(2..=4).contains(&dim) {
            return Err(Error::InvalidDimension(dim));
        }
        if coords.len() % dim != 0 {
            return Err(Error::InvalidArgument("ragged coordinate list".into()));
        }
        let mut rows: Vec<&[i32]> = coords.chunks_exact(dim).collect();
        for r in &rows {
            let norm: i128 = r.iter().map(|&c| c as i128 * c as i128).sum();
            if norm != n as i128 {
                return Err(Error::InvalidArgument(format!("{r:?} has |x|² = {norm}, not {n}")));
            }
        }
        rows.sort_unstable();
        if rows.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate points".into()));
        }
        let coords = rows.into_iter().flatten().copied().collect();
        Ok(Self { n, dim, coords })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[i32] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[i32]> + Clone + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn lattice_points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.points().map(|p| LatticePoint { coords: p.iter().map(|&c| c as i64).collect() })
    }

    /// Binary search in the canonical order.
    pub fn contains(&self, p: &[i32]) -> bool {
        if p.len() != self.dim {
            return false;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(p) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Points whose coordinates have gcd 1.
pub fn filter_primitive(s: &SolutionSet) -> SolutionSet {
    let coords = s
        .points()
        .filter(|p| p.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs() as u64)) == 1)
        .flatten()
        .copied()
        .collect();
    SolutionSet::from_sorted(s.n, s.dim, coords)
}

/// `x ↦ x / √n` onto the unit sphere `S^{dim−1}`.
pub fn project_to_sphere(s: &SolutionSet) -> Result<UnitPointSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let scale = (s.n as f64).sqrt();
    let coords = s.coords.iter().map(|&c| c as f64 / scale).collect();
    Ok(UnitPointSet::from_raw(s.dim, coords, Provenance::Arithmetic { n: s.n }))
}

/// Two solutions of `x_1² + … + x_4² = n` at projected distance `2a/√n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosePair {
    pub a: i64,
    pub p: LatticePoint,
    pub q: LatticePoint,
    pub dist: f64,
}

/// For odd `n`, one of `n − 1`, `n − 4` is a sum of three squares, giving
/// the pair `(a, x)`, `(−a, x)` with `a ∈ {1, 2}`.
pub fn close_pair_dim4(n: u64) -> Result<ClosePair> {
    if n < 2 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("close_pair_dim4 needs odd n >= 2, got {n}")));
    }
    for a in [1u64, 2] {
        if n <= a * a {
            continue;
        }
        let m = n - a * a;
        if !three_squares_representable(m) {
            continue;
        }
        let mut found: Option<[i64; 3]> = None;
        find_three_squares(m, &mut found);
        let x = found.expect("representable by the three-squares criterion");
        let a = a as i64;
        let p = LatticePoint { coords: vec![a, x[0], x[1], x[2]] };
        let q = LatticePoint { coords: vec![-a, x[0], x[1], x[2]] };
        return Ok(ClosePair { a, p, q, dist: 2.0 * a as f64 / (n as f64).sqrt() });
    }
    let residue = |m: u64| if m == 0 { 0 } else { strip_four_powers(m).1 % 8 };
    Err(Error::ResidueObstruction { n, r1: residue(n - 1), r4: residue(n.saturating_sub(4)) })
}

/// First canonical decomposition, returned in nonincreasing order.
fn find_three_squares(m: u64, out: &mut Option<[i64; 3]>) {
    if m == 0 {
        *out = Some([0, 0, 0]);
        return;
    }
    for_each_canonical(m, 3, |c| {
        if out.is_none() {
            *out = Some([c[2], c[1], c[0]]);
        }
    });
}

/// Distinct first coordinates realized on `x_1² + … + x_4² = n`.
///
/// `a` is realized iff `n − a²` is a sum of three squares, so no enumeration
/// of the four-dimensional set is needed.
pub fn realized_first_coords(n: u64) -> Vec<i64> {
    let r = crate::numtheory::isqrt(n) as i64;
    (-r..=r)
        .filter(|&a| {
            let m = n - (a * a) as u64;
            m == 0 || three_squares_representable(m)
        })
        .collect()
}
