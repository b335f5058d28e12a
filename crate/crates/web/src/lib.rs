//! WebAssembly bindings for the static demo page in `www/`. Every export
//! returns a JSON string so the page only needs `JSON.parse`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use spherepts::baselines::sample_uniform_sphere;
use spherepts::experiments::{fig1, fig2, Config};
use spherepts::lattice::{enumerate_solutions_with, pair_correlation, EnumerationLimits};
use spherepts::sphere_stats::{ripley, HistogramSpec, RipleyProfile};

/// The page enumerates in the browser's main thread; keep `n` modest.
const MAX_N: u64 = 20_000_000;

fn limits() -> EnumerationLimits {
    EnumerationLimits { dim3: MAX_N, ..Config::default().limits }
}

fn respond(v: spherepts::Result<Value>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Cap windows of about `window` points: lattice points of `n`, uniform
/// random points and a triangular patch, in Lambert coordinates.
#[wasm_bindgen]
pub fn patches(n: u64, window: usize, seed: u64) -> String {
    respond(fig1(n, window, seed, &limits()).map(|d| {
        json!({
            "n": d.n,
            "N": d.n_points,
            "radius": d.radius,
            "arithmetic": d.arithmetic.xy,
            "random": d.random.xy,
            "rigid": d.rigid.xy,
        })
    }))
}

/// Spacing histogram of the lattice points of `n` with its KS distance to
/// the exponential law.
#[wasm_bindgen]
pub fn spacing_histogram(n: u64, bins: usize, max: f64) -> String {
    if bins == 0 || !(max > 0.0) {
        return json!({ "error": "bins and max must be positive" }).to_string();
    }
    respond(fig2(n, HistogramSpec { bins, max }, &limits()).map(|d| {
        json!({
            "n": d.n,
            "N": d.n_points,
            "ks": d.ks,
            "mean": d.mean,
            "edges": d.histogram.edges,
            "masses": d.histogram.masses,
            "overflow": d.histogram.overflow,
        })
    }))
}

/// Normalized Ripley profiles `K̂_r/(N²r²/4)` at `steps` thresholds in
/// `(0, r_max]`: exact for the lattice points of `n`, geometric for a
/// uniform sample of the same size.
#[wasm_bindgen]
pub fn ripley_profiles(n: u64, r_max: f64, steps: usize, seed: u64) -> String {
    if steps == 0 || !(r_max > 0.0 && r_max <= 2.0) {
        return json!({ "error": "need steps >= 1 and r_max in (0, 2]" }).to_string();
    }
    respond((|| {
        let s = enumerate_solutions_with(n, 3, &limits())?;
        if s.len() < 2 {
            return Err(spherepts::Error::NonRepresentable { n, dim: 3 });
        }
        let den = 1_000_003u64;
        let sq: Vec<(u64, u64)> = (1..=steps as u64)
            .map(|k| ((r_max * r_max * den as f64) as u64 * k / steps as u64, den))
            .filter(|&(p, _)| p > 0)
            .collect();
        let exact = RipleyProfile::from_pair_correlation(&pair_correlation(&s)?, 2, &sq)?;
        let random = ripley(&sample_uniform_sphere(s.len(), 2, seed)?, &exact.thresholds)?;
        Ok(json!({
            "n": n,
            "N": s.len(),
            "r": exact.thresholds,
            "arithmetic": exact.normalized,
            "random": random.normalized,
        }))
    })())
}
