use serde::{Deserialize, Serialize};

use crate::baselines::{mean_std, monte_carlo, Statistic};
use crate::error::Result;
use crate::lattice::{enumerate_solutions_with, pair_correlation, EnumerationLimits};

/// The three primes of the energy table.
pub const TABLE1_N: [u64; 3] = [104_773, 104_761, 1_299_763];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: u64,
    #[serde(rename = "N")]
    pub n_points: usize,
    /// `E − N(N−1)` for the projected lattice points.
    pub integer: f64,
    /// Mean of `E − N(N−1)` over `runs` uniform configurations of `N` points.
    pub random_mean: f64,
    pub random_std: Option<f64>,
    pub runs: usize,
}

/// Energy table rows. The integer column comes from the exact `A(n, t)`
/// table, so it depends on `n` alone.
pub fn table1(runs: usize, seed: u64, limits: &EnumerationLimits) -> Result<Vec<Table1Row>> {
    TABLE1_N
        .iter()
        .map(|&n| {
            let s = enumerate_solutions_with(n, 3, limits)?;
            let big_n = s.len() as f64;
            let integer = pair_correlation(&s)?.energy() - big_n * (big_n - 1.0);
            let mc = monte_carlo(&Statistic::EnergyDeviation, s.len(), 2, runs, seed)?;
            let (random_mean, random_std) = mean_std(&mc.values);
            Ok(Table1Row { n, n_points: s.len(), integer, random_mean, random_std, runs })
        })
        .collect()
}
