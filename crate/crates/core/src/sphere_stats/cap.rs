use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Normalized measure of the cap `{x ∈ S^k : |x − x₀| < r}` (chord radius `r`).
///
/// `k = 1`: `θ/π` with `θ = 2·asin(r/2)`; `k = 2`: `r²/4`;
/// `k = 3`: `(θ − sinθ·cosθ)/π` with `θ = arccos(1 − r²/2)`.
pub fn cap_fraction(k: usize, r: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&r) {
        return Err(Error::Domain { value: r, domain: "chord radius in [0, 2]" });
    }
    match k {
        1 => Ok(2.0 * (r / 2.0).asin() / PI),
        2 => Ok(r * r / 4.0),
        3 => {
            let theta = (1.0 - r * r / 2.0).clamp(-1.0, 1.0).acos();
            Ok(((theta - theta.sin() * theta.cos()) / PI).clamp(0.0, 1.0))
        }
        other => Err(Error::InvalidDimension(other + 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(cap_fraction(2, 2.0).unwrap(), 1.0);
        assert_eq!(cap_fraction(2, 0.3).unwrap(), 0.3 * 0.3 / 4.0);
        assert!((cap_fraction(2, 0.3).unwrap() - 0.0225).abs() < 1e-15);
        assert!((cap_fraction(3, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((cap_fraction(1, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(cap_fraction(2, 2.5).is_err());
        assert!(cap_fraction(2, -0.1).is_err());
    }

    #[test]
    fn small_cap_on_s3() {
        let r = 0.01;
        let ratio = cap_fraction(3, r).unwrap() / (2.0 / (3.0 * PI) * r.powi(3));
        assert!((ratio - 1.0).abs() < 0.01, "ratio {ratio}");
    }

    #[test]
    fn s3_cap_against_quadrature() {
        // Relative volume of a cap of angular radius θ on S³ is (2/π)∫₀^θ sin²φ dφ.
        for &r in &[0.1, 0.5, 1.0, 1.5, 1.9] {
            let theta = (1.0 - r * r / 2.0f64).acos();
            let steps = 20_000;
            let h = theta / steps as f64;
            let simpson: f64 = (0..=steps)
                .map(|i| {
                    let w = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                    w * (i as f64 * h).sin().powi(2)
                })
                .sum::<f64>()
                * h
                / 3.0;
            let expect = 2.0 / PI * simpson;
            assert!((cap_fraction(3, r).unwrap() - expect).abs() < 1e-10);
        }
    }
}
