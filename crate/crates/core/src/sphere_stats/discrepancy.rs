use rand::Rng;

use crate::baselines::{random_direction, seeded_rng};
use crate::error::{Error, Result};
use crate::points::{chord_sq, UnitPointSet};

use super::cap::cap_fraction;

/// Largest `|#{P_j in cap}/N − V(r)|` over `num_caps` random caps
/// (uniform centre, chord radius uniform on `[0, 2]`). This is a lower
/// bound for the spherical cap discrepancy.
pub fn cap_discrepancy(points: &UnitPointSet, num_caps: usize, seed: u64) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    if num_caps == 0 {
        return Err(Error::InvalidArgument("num_caps must be at least 1".into()));
    }
    let d = points.ambient_dim();
    let k = points.sphere_dim();
    let n = points.len() as f64;
    let mut rng = seeded_rng(seed);
    let mut center = vec![0.0; d];
    let mut worst = 0.0f64;
    for _ in 0..num_caps {
        random_direction(&mut rng, &mut center);
        let r: f64 = rng.random_range(0.0..=2.0);
        let r2 = r * r;
        let inside = points.points().filter(|p| chord_sq(p, &center) < r2).count() as f64;
        worst = worst.max((inside / n - cap_fraction(k, r)?).abs());
    }
    Ok(worst)
}
