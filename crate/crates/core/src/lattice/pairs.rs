use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::enumerate::{is_canonical, orbit_size};
use super::SolutionSet;

/// Multiplicities `A(n, t) = #{(x, y) ∈ E(n)² : ⟨x, y⟩ = t}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCorrelationTable {
    pub n: u64,
    pub entries: BTreeMap<i64, u64>,
}

impl PairCorrelationTable {
    pub fn get(&self, t: i64) -> u64 {
        self.entries.get(&t).copied().unwrap_or(0)
    }

    /// `Σ_t A(n, t)`, which equals `N²`.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Ordered pairs of distinct projected points at chord distance
    /// strictly below `r`, where `r² = num / den`.
    ///
    /// Uses `|x̂ − ŷ|² = 2(n − t)/n`, so the test is `den·2(n−t) < num·n`
    /// in exact integer arithmetic.
    pub fn ripley_count(&self, num: u64, den: u64) -> u64 {
        assert!(den > 0);
        let n = self.n as i128;
        let rhs = num as i128 * n;
        self.entries
            .range(..self.n as i64)
            .filter(|(&t, _)| den as i128 * 2 * (n - t as i128) < rhs)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Largest inner product between distinct points.
    pub fn max_offdiagonal(&self) -> Option<i64> {
        self.entries.range(..self.n as i64).next_back().map(|(&t, _)| t)
    }

    /// `min_{x≠y} |x − y|² = 2(n − t_max)`, an exact integer.
    pub fn min_sq_distance(&self) -> Option<u64> {
        self.max_offdiagonal().map(|t| 2 * (self.n as i64 - t) as u64)
    }

    /// Electrostatic energy of the projected set, `Σ_{t<n} A(n,t) · √(n / (2(n−t)))`.
    pub fn energy(&self) -> f64 {
        let n = self.n as f64;
        let mut acc = crate::sphere_stats::energy::Neumaier::default();
        for (&t, &c) in self.entries.range(..self.n as i64) {
            let d2 = 2.0 * (self.n as i64 - t) as f64;
            acc.add(c as f64 * (n / d2).sqrt());
        }
        acc.sum()
    }
}

/// `A(n, t)` for all `t`, from exact integer inner products.
///
/// Inner-product statistics are invariant under signed permutations, so the
/// outer loop visits one representative per orbit and weights by orbit size.
pub fn pair_correlation(s: &SolutionSet) -> Result<PairCorrelationTable> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut entries: BTreeMap<i64, u64> = BTreeMap::new();
    let mut local: BTreeMap<i64, u64> = BTreeMap::new();
    let mut canon = [0i64; 4];
    for x in s.points().filter(|p| is_canonical(p)) {
        for (c, &v) in canon.iter_mut().zip(x) {
            *c = v as i64;
        }
        let weight = orbit_size(&canon[..s.dim()]);
        local.clear();
        for y in s.points() {
            *local.entry(dot(x, y)).or_insert(0) += 1;
        }
        for (&t, &c) in &local {
            *entries.entry(t).or_insert(0) += c * weight;
        }
    }
    Ok(PairCorrelationTable { n: s.n(), entries })
}

#[inline]
pub(crate) fn dot(x: &[i32], y: &[i32]) -> i64 {
    x.iter().zip(y).map(|(&a, &b)| a as i64 * b as i64).sum()
}

fn check_shift(s: &SolutionSet, h: &[i64]) -> Result<()> {
    if h.len() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), got: h.len() });
    }
    if h.iter().all(|&c| c == 0) {
        return Err(Error::ZeroShift);
    }
    Ok(())
}

/// `K_h = #{(x, y) ∈ E(n)² : x − y = h}`.
pub fn shifted_count(s: &SolutionSet, h: &[i64]) -> Result<u64> {
    check_shift(s, h)?;
    let mut y = [0i32; 4];
    let dim = s.dim();
    let mut count = 0;
    for x in s.points() {
        let mut in_range = true;
        for i in 0..dim {
            let v = x[i] as i64 - h[i];
            match i32::try_from(v) {
                Ok(v) => y[i] = v,
                Err(_) => in_range = false,
            }
        }
        if in_range && s.contains(&y[..dim]) {
            count += 1;
        }
    }
    Ok(count)
}

/// `K_{h,k} = #{(x, y, z, w) : x − y = h, z − w = k}`, which factorizes as
/// `K_h · K_k` because the two pair conditions are independent.
pub fn double_shifted_count(s: &SolutionSet, h: &[i64], k: &[i64]) -> Result<u64> {
    Ok(shifted_count(s, h)? * shifted_count(s, k)?)
}

/// Direct quadruple count for `K_{h,k}`; `O(N⁴)`, only for tiny sets.
pub fn double_shifted_count_brute(s: &SolutionSet, h: &[i64], k: &[i64]) -> Result<u64> {
    check_shift(s, h)?;
    check_shift(s, k)?;
    let is_diff = |a: &[i32], b: &[i32], v: &[i64]| {
        a.iter().zip(b).zip(v).all(|((&a, &b), &v)| a as i64 - b as i64 == v)
    };
    let mut count = 0;
    for x in s.points() {
        for y in s.points() {
            for z in s.points() {
                for w in s.points() {
                    if is_diff(x, y, h) && is_diff(z, w, k) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}
