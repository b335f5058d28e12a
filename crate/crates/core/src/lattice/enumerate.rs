use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numtheory::{is_perfect_square, isqrt};

use super::SolutionSet;

/// Largest `n` accepted for each dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EnumerationLimits {
    pub dim2: u64,
    pub dim3: u64,
    pub dim4: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self {
            dim2: 1 << 40,
            dim3: 200_000_000,
            dim4: 1_000_000,
        }
    }
}

impl EnumerationLimits {
    fn check(&self, n: u64, dim: usize) -> Result<()> {
        let limit = match dim {
            2 => self.dim2,
            3 => self.dim3,
            4 => self.dim4,
            d => return Err(Error::InvalidDimension(d)),
        };
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if n > limit {
            return Err(Error::BudgetExceeded {
                what: "enumeration",
                requested: n,
                limit,
            });
        }
        Ok(())
    }
}

/// Calls `f` once per solution of `c_0² + … + c_{t-1}² = n` with
/// `0 <= c_0 <= c_1 <= … <= c_{t-1}`. Every full solution is a signed
/// permutation of exactly one such tuple.
pub(crate) fn for_each_canonical(n: u64, dim: usize, mut f: impl FnMut(&[i64])) {
    let mut buf = [0i64; 4];
    canonical_rec(n, dim, 0, 0, &mut buf, &mut f);
}

fn canonical_rec(
    rem: u64,
    dim: usize,
    pos: usize,
    lo: u64,
    buf: &mut [i64; 4],
    f: &mut impl FnMut(&[i64]),
) {
    let left = (dim - pos) as u64;
    if left == 1 {
        if is_perfect_square(rem) {
            let c = isqrt(rem);
            if c >= lo {
                buf[pos] = c as i64;
                f(&buf[..dim]);
            }
        }
        return;
    }
    // c_pos is the smallest of the remaining `left` entries, so left·c² <= rem.
    let hi = isqrt(rem / left);
    for c in lo..=hi {
        buf[pos] = c as i64;
        canonical_rec(rem - c * c, dim, pos + 1, c, buf, f);
    }
}

/// Number of distinct signed permutations of a canonical tuple.
pub(crate) fn orbit_size(canon: &[i64]) -> u64 {
    let t = canon.len() as u64;
    let mut perms: u64 = (1..=t).product();
    let mut run = 1u64;
    for w in canon.windows(2) {
        if w[0] == w[1] {
            run += 1;
            perms /= run;
        } else {
            run = 1;
        }
    }
    let nonzero = canon.iter().filter(|&&c| c != 0).count() as u32;
    perms << nonzero
}

/// True if `p` is the canonical representative of its orbit.
pub(crate) fn is_canonical(p: &[i32]) -> bool {
    p.iter().all(|&c| c >= 0) && p.windows(2).all(|w| w[0] <= w[1])
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn push_orbit(canon: &[i64], out: &mut Vec<i32>) {
    let dim = canon.len();
    let mut perm = [0i64; 4];
    perm[..dim].copy_from_slice(canon);
    let perm = &mut perm[..dim];
    loop {
        let nz: Vec<usize> = (0..dim).filter(|&i| perm[i] != 0).collect();
        for mask in 0u32..(1 << nz.len()) {
            let start = out.len();
            out.extend(perm.iter().map(|&c| c as i32));
            for (bit, &i) in nz.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    out[start + i] = -out[start + i];
                }
            }
        }
        if !next_permutation(perm) {
            break;
        }
    }
}

fn lex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    a.cmp(b)
}

/// All integer solutions of `x_1² + … + x_dim² = n`, in lexicographic order.
pub fn enumerate_solutions(n: u64, dim: usize) -> Result<SolutionSet> {
    enumerate_solutions_with(n, dim, &EnumerationLimits::default())
}

pub fn enumerate_solutions_with(
    n: u64,
    dim: usize,
    limits: &EnumerationLimits,
) -> Result<SolutionSet> {
    limits.check(n, dim)?;
    let mut coords: Vec<i32> = Vec::new();
    for_each_canonical(n, dim, |c| push_orbit(c, &mut coords));
    let mut rows: Vec<&[i32]> = coords.chunks_exact(dim).collect();
    rows.sort_unstable_by(|a, b| lex_cmp(a, b));
    let sorted: Vec<i32> = rows.into_iter().flatten().copied().collect();
    Ok(SolutionSet::from_sorted(n, dim, sorted))
}

/// `#{x ∈ Z^dim : |x|² = n}` without materializing the points.
pub fn count_solutions(n: u64, dim: usize) -> Result<u64> {
    count_solutions_with(n, dim, &EnumerationLimits::default())
}

pub fn count_solutions_with(n: u64, dim: usize, limits: &EnumerationLimits) -> Result<u64> {
    limits.check(n, dim)?;
    let mut total = 0u64;
    for_each_canonical(n, dim, |c| total += orbit_size(c));
    Ok(total)
}
