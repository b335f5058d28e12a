use crate::error::{Error, Result};
use crate::points::{chord, UnitPointSet};

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `E = Σ_{i≠j} 1/|P_i − P_j|` over ordered pairs.
///
/// Each row `i` sums its `j > i` terms into its own compensated accumulator;
/// row totals are then combined in index order, so the result is bit-stable
/// for a fixed configuration.
pub fn energy(points: &UnitPointSet) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut total = Neumaier::default();
    for i in 0..n {
        let p = points.point(i);
        let mut row = Neumaier::default();
        for j in i + 1..n {
            let d = chord(p, points.point(j));
            if d == 0.0 {
                return Err(Error::CoincidentPoints(i, j));
            }
            row.add(1.0 / d);
        }
        total.add(row.sum());
    }
    Ok(2.0 * total.sum())
}
