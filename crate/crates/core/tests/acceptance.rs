//! Acceptance suite: one PASS/FAIL line per criterion. Thresholds are fixed
//! here or read from the bundled defaults; a failing criterion is reported,
//! never relaxed.

use std::time::{Duration, Instant};

use spherepts::baselines::{monte_carlo, sample_uniform_sphere, Statistic};
use spherepts::experiments::{ensemble, fig2, scaling, Config, EnsembleParams, ScalingParams, ScalingTarget};
use spherepts::lattice::{
    close_pair_dim4, count_solutions, enumerate_solutions, pair_correlation, project_to_sphere,
};
use spherepts::numtheory::{is_prime, is_squarefree};
use spherepts::sphere_stats::{
    cap_fraction, covering_radius, energy, ks_exponential, min_spacing, ripley, spacing_measure,
    RipleyProfile,
};
use spherepts::sphere_stats::index::SphereGrid;
use spherepts::{Provenance, UnitPointSet};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// `n = 4^a(8b+7)` by repeated division, independent of the library.
fn excluded_form(mut n: u64) -> bool {
    while n % 4 == 0 {
        n /= 4;
    }
    n % 8 == 7
}

fn legendre_gauss() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=100_000u64 {
        let nonempty = !enumerate_solutions(n, 3).unwrap().is_empty();
        if nonempty == excluded_form(n) {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("n <= 1e5, mismatches {bad:?}"))
}

fn counts() -> Outcome {
    let mut bad = Vec::new();
    let mut check = |n: u64, dim: usize, want: u64| {
        let got = count_solutions(n, dim).unwrap();
        if got != want {
            bad.push(format!("({n},{dim}) = {got} != {want}"));
        }
    };
    for n in [1, 4, 16, 64] {
        check(n, 3, 6);
    }
    check(104_773, 3, 1224);
    check(104_761, 3, 3072);
    check(1_299_763, 3, 4296);
    check(179_424_691, 3, 94_536);
    check(5, 2, 8);
    let primes: Vec<u64> = (3..=2000).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        check(p, 4, 8 * (p + 1));
    }
    outcome(bad.is_empty(), format!("{} odd primes in dim 4; failures {bad:?}", primes.len()))
}

fn table1_energy() -> Outcome {
    let want = [(104_773u64, -282.0), (104_761, 37_732.0), (1_299_763, 8_380.0)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, target) in want {
        let start = Instant::now();
        let p = project_to_sphere(&enumerate_solutions(n, 3).unwrap()).unwrap();
        let big_n = p.len() as f64;
        let dev = energy(&p).unwrap() - big_n * (big_n - 1.0);
        let secs = start.elapsed().as_secs_f64();
        pass &= (dev - target).abs() <= 1.0 && secs < 10.0;
        parts.push(format!("n={n}: {dev:.3} (want {target} ± 1, {secs:.2}s)"));
    }
    outcome(pass, parts.join("; "))
}

/// `E[1/|P − Q|]` for independent uniform points on S² by Simpson's rule on
/// the angle: the density of θ is `sinθ/2` and `|P − Q| = 2 sin(θ/2)`.
fn mean_inverse_chord() -> f64 {
    let steps = 10_000;
    let h = std::f64::consts::PI / steps as f64;
    let f = |t: f64| if t == 0.0 { 0.5 } else { t.sin() / 2.0 / (2.0 * (t / 2.0).sin()) };
    (0..=steps)
        .map(|i| {
            let w = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            w * f(i as f64 * h)
        })
        .sum::<f64>()
        * h
        / 3.0
}

fn random_energy_mean(cfg: &Config) -> Outcome {
    let n = 3072usize;
    let mc = monte_carlo(&Statistic::EnergyDeviation, n, 2, 20, cfg.seed).unwrap();
    let nf = n as f64;
    let expected = nf * (nf - 1.0) * (mean_inverse_chord() - 1.0);
    let se = mc.standard_error().unwrap();
    let z = (mc.mean - expected) / se;
    outcome(z.abs() <= 3.0, format!("mean {:.1}, oracle {expected:.3}, SE {se:.1}, z {z:.2}", mc.mean))
}

fn ripley_bridge() -> Outcome {
    // q is a prime above every n tested, so 2(n − t)q = pn has no solutions.
    let q = 5003u64;
    let thresholds: Vec<(u64, u64)> = (1..=20).map(|k| (4 * q * k / 21, q)).collect();
    let mut sets = 0;
    let mut bad = Vec::new();
    for n in (1..=5000u64).filter(|&n| is_squarefree(n)) {
        let s = enumerate_solutions(n, 3).unwrap();
        if s.len() < 2 {
            continue;
        }
        sets += 1;
        let exact = RipleyProfile::from_pair_correlation(&pair_correlation(&s).unwrap(), 2, &thresholds)
            .unwrap();
        let geo = ripley(&project_to_sphere(&s).unwrap(), &exact.thresholds).unwrap();
        if geo.counts != exact.counts {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("{sets} squarefree sets x 20 thresholds; mismatches {bad:?}"))
}

fn random_ripley(cfg: &Config) -> Outcome {
    let (n, r) = (4096usize, 0.1);
    let mc = monte_carlo(&Statistic::Ripley { r }, n, 2, 20, cfg.seed).unwrap();
    let nf = n as f64;
    let expected = nf * (nf - 1.0) * r * r / 4.0;
    let z = (mc.mean - expected) / mc.standard_error().unwrap();
    outcome(z.abs() <= 3.0, format!("mean {:.1}, expected {expected:.1}, z {z:.2}", mc.mean))
}

fn exponential_law(cfg: &Config) -> Outcome {
    let p = sample_uniform_sphere(100_000, 2, cfg.seed).unwrap();
    let ks = ks_exponential(&spacing_measure(&p).unwrap().raw);
    let max = cfg.calibration.random_ks_max;
    outcome(ks < max, format!("N = 1e5, KS {ks:.4} (< {max})"))
}

fn figure2(cfg: &Config) -> Outcome {
    let start = Instant::now();
    let f = fig2(179_424_691, cfg.histogram, &cfg.limits).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let max = cfg.calibration.fig2_ks_max;
    let mass = f.histogram.total_mass();
    outcome(
        f.ks < max && secs < 600.0 && (mass - 1.0).abs() < 1e-9,
        format!("N = {}, KS {:.4} (< {max}), mass {mass}, {secs:.1}s", f.n_points, f.ks),
    )
}

fn spacing_floors() -> Outcome {
    let mut bad = Vec::new();
    let mut tested = 0;
    for (dim, top) in [(3usize, 3000u64), (4, 600)] {
        for n in 2..=top {
            let s = enumerate_solutions(n, dim).unwrap();
            if s.len() < 2 {
                continue;
            }
            tested += 1;
            // m²·n = min |x − y|², an integer.
            let exact = pair_correlation(&s).unwrap().min_sq_distance().unwrap();
            let geo = min_spacing(&project_to_sphere(&s).unwrap()).unwrap() * (n as f64).sqrt();
            if exact < 1 || geo < 1.0 - 1e-12 {
                bad.push((dim, n));
            }
        }
    }
    let mut over = Vec::new();
    for n in (3..=100_000u64).step_by(2) {
        let c = close_pair_dim4(n).unwrap();
        let on_sphere = |v: &[i64]| v.iter().map(|x| x * x).sum::<i64>() == n as i64;
        let d2: i64 = c.p.coords.iter().zip(&c.q.coords).map(|(a, b)| (a - b).pow(2)).sum();
        if !(on_sphere(&c.p.coords) && on_sphere(&c.q.coords) && d2 >= 1 && d2 <= 16) {
            over.push(n);
        }
    }
    outcome(
        bad.is_empty() && over.is_empty(),
        format!("m·√n >= 1 on {tested} sets, failures {bad:?}; dim-4 m·√n <= 4 for odd n <= 1e5, failures {over:?}"),
    )
}

fn void_regime() -> Outcome {
    let mut bad = Vec::new();
    let mut sets = 0;
    let mut queries = 0usize;
    for n in (3..=10_000u64).step_by(2) {
        let s = enumerate_solutions(n, 4).unwrap();
        let p = project_to_sphere(&s).unwrap();
        sets += 1;
        // K̂_r = 0 for every r < 1/√n iff no chord is below 1/√n. Signed
        // permutations are isometries preserving the set, so the nearest
        // neighbour distances of one point per orbit (sorted, nonnegative
        // coordinates) already contain the minimum.
        let r = 1.0 / (n as f64).sqrt();
        let grid = SphereGrid::new(&p);
        let mut m = f64::INFINITY;
        for j in 0..p.len() {
            let x = p.point(j);
            if x[0] >= 0.0 && x.windows(2).all(|w| w[0] <= w[1]) {
                queries += 1;
                m = m.min(grid.nearest(x, Some(j)).unwrap().1);
            }
        }
        if m < r {
            bad.push(n);
        }
        let direct = n <= 300 || n % 1000 == 1;
        if direct && ripley(&p, &[r * (1.0 - 1e-12)]).unwrap().counts[0] != 0 {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("{sets} odd n <= 1e4, {queries} orbit queries; failures {bad:?}"))
}

fn slopes(cfg: &Config) -> Outcome {
    let bands = [
        (ScalingTarget::MinSpacingS2, -1.2, -0.8),
        (ScalingTarget::MinSpacingS3, -0.8, -0.55),
        (ScalingTarget::CoveringS3, -0.45, -0.22),
        (ScalingTarget::MinSpacingArithS3, -0.6, -0.4),
        (ScalingTarget::CoveringArithS3, -0.35, -0.15),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (target, lo, hi) in bands {
        let start = Instant::now();
        let p = ScalingParams { seed: cfg.seed, ..ScalingParams::new(target) };
        let r = scaling(&p, &cfg.limits).unwrap();
        let secs = start.elapsed().as_secs_f64();
        let ok = r.slope >= lo && r.slope <= hi && secs < 900.0;
        pass &= ok;
        parts.push(format!("{target} {:.3} in [{lo}, {hi}] ({secs:.1}s)", r.slope));
    }
    outcome(pass, parts.join("; "))
}

fn cap_volume() -> Outcome {
    let exact = (1..=200).all(|i| {
        let r = i as f64 / 100.0;
        cap_fraction(2, r).unwrap() == r * r / 4.0
    });
    let r = 0.01f64;
    let ratio = cap_fraction(3, r).unwrap() / (2.0 / (3.0 * std::f64::consts::PI) * r.powi(3));
    outcome(exact && (ratio - 1.0).abs() < 0.01, format!("V(2,r) = r²/4 exact: {exact}; V(3,0.01) ratio {ratio:.6}"))
}

fn octahedron_covering(cfg: &Config) -> Outcome {
    let mut c = Vec::new();
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut v = [0.0; 3];
            v[i] = s;
            c.extend(v);
        }
    }
    let oct = UnitPointSet::new(3, c, Provenance::External).unwrap();
    let mesh = cfg.mesh_s2;
    let est = covering_radius(&oct, mesh).unwrap();
    let truth = (2.0 - 2.0 / 3f64.sqrt()).sqrt();
    outcome(
        (est.estimate - truth).abs() <= mesh && est.estimate <= truth + 1e-12,
        format!("estimate {:.6}, exact {truth:.6}, mesh {mesh}", est.estimate),
    )
}

fn ensemble_support(cfg: &Config) -> Outcome {
    let cal = &cfg.calibration;
    let p = EnsembleParams {
        r_max: 10_000,
        delta: cal.ensemble_delta,
        squarefree_only: true,
        exclude_mod_8: vec![7],
        band: cal.ensemble_median_band,
        ..Default::default()
    };
    let s = ensemble(&p, &cfg.limits).unwrap().summary;
    let med = s.median_normalized.unwrap();
    let z = s.normalized_mean.unwrap();
    let [mlo, mhi] = cal.ensemble_median_band;
    let [zlo, zhi] = cal.ensemble_z_band;
    outcome(
        med >= mlo && med <= mhi && z >= zlo && z <= zhi,
        format!("{} rows; median {med:.3} in [{mlo}, {mhi}]; mean/std {z:.3} in [{zlo}, {zhi}]", s.rows),
    )
}

fn main() {
    let cfg = Config::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("legendre_gauss", Box::new(legendre_gauss)),
        ("counts", Box::new(counts)),
        ("table1_energy", Box::new(table1_energy)),
        ("random_energy_mean", Box::new(|| random_energy_mean(&cfg))),
        ("ripley_bridge", Box::new(ripley_bridge)),
        ("random_ripley_law", Box::new(|| random_ripley(&cfg))),
        ("exponential_spacing_law", Box::new(|| exponential_law(&cfg))),
        ("figure2_histogram", Box::new(|| figure2(&cfg))),
        ("arithmetic_spacing_floors", Box::new(spacing_floors)),
        ("dim4_void_regime", Box::new(void_regime)),
        ("scaling_slopes", Box::new(|| slopes(&cfg))),
        ("cap_volume", Box::new(cap_volume)),
        ("octahedron_covering", Box::new(|| octahedron_covering(&cfg))),
        ("ensemble_ripley", Box::new(|| ensemble_support(&cfg))),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    let total_start = Instant::now();
    for (name, check) in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let o = check();
        let took = Duration::as_secs_f64(&start.elapsed());
        if !o.pass {
            failed += 1;
        }
        println!("{} {name}: {} [{took:.1}s]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!(
        "acceptance: {} passed, {failed} failed [{:.1}s]",
        ran - failed,
        total_start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
