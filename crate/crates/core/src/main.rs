use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spherepts::baselines::{hex_patch, monte_carlo, sample_uniform_sphere, Statistic};
use spherepts::experiments::{
    self, output, Config, EnsembleParams, ScalingParams, ScalingTarget,
};
use spherepts::lattice::{
    enumerate_solutions_with, io::read_solution_set, io::write_solution_set, project_to_sphere,
};
use spherepts::numtheory::is_squarefree;
use spherepts::sphere_stats::{compute_report, StatsOptions};
use spherepts::{Error, Result, UnitPointSet};

#[derive(Parser)]
#[command(name = "spherepts", version, about = "Lattice points on spheres and their local statistics")]
struct Cli {
    /// TOML file overriding the bundled defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the integer solutions of x_1² + … + x_dim² = n as CSV.
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Statistics report for one configuration.
    Stats(StatsArgs),
    /// Energy table for the three reference primes.
    Table1 {
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// CSV output; the text table always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ripley counts at r = n^(δ−1/2) over a range of n.
    Ensemble(EnsembleArgs),
    /// Log-log slope of a statistic against N.
    Scaling {
        #[arg(long)]
        target: String,
        /// Comma-separated N (random targets) or odd n (arithmetic targets).
        #[arg(long, value_delimiter = ',')]
        grid: Vec<u64>,
        /// Configurations per grid point.
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        mesh: Option<f64>,
        /// Per-point CSV; the JSON report goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV bundles for the patch and spacing figures.
    Figdata {
        #[arg(long, value_enum)]
        which: Figure,
        #[arg(long)]
        n: Option<u64>,
        /// Target number of points per patch window.
        #[arg(long, default_value_t = 120)]
        window: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo summary of a statistic on uniform random points.
    Baseline {
        #[arg(long, value_enum)]
        stat: StatName,
        #[arg(long)]
        points: usize,
        /// Sphere dimension k of S^k.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        mesh: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        caps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Fig1,
    Fig2,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatName {
    EnergyDeviation,
    Ripley,
    MinSpacing,
    Covering,
    SpacingKs,
    Discrepancy,
}

#[derive(Args)]
struct StatsArgs {
    /// Arithmetic set E(n) of dimension --dim.
    #[arg(long, group = "source")]
    n: Option<u64>,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Integer point-set CSV as written by `enumerate`.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Uniform random set of this many points on S^k.
    #[arg(long, group = "source")]
    random: Option<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Triangular patch at the density of this many points on S².
    #[arg(long, group = "source")]
    hex: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    energy: bool,
    #[arg(long)]
    spacing: bool,
    /// Ripley thresholds, comma-separated and increasing.
    #[arg(long, value_delimiter = ',')]
    r: Vec<f64>,
    #[arg(long)]
    covering: bool,
    #[arg(long)]
    mesh: Option<f64>,
    /// Number of random caps for the discrepancy estimate.
    #[arg(long)]
    discrepancy: Option<usize>,
    /// Compute every statistic.
    #[arg(long)]
    all: bool,
    /// Compute energy even above the configured pair budget.
    #[arg(long)]
    force: bool,
    /// Report JSON (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    histogram_out: Option<PathBuf>,
    #[arg(long)]
    profile_out: Option<PathBuf>,
}

#[derive(Args)]
struct EnsembleArgs {
    #[arg(long, default_value_t = 1)]
    r_min: u64,
    #[arg(long)]
    r_max: u64,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    squarefree: bool,
    /// Residues of n mod 8 to skip, comma-separated.
    #[arg(long, value_delimiter = ',')]
    exclude_mod8: Vec<u64>,
    /// Keep rows for n with no solutions.
    #[arg(long)]
    include_empty: bool,
    /// Shift vector h for Σ K_h, comma-separated; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    shift: Vec<String>,
    /// Add a covering radius column at this mesh.
    #[arg(long)]
    mesh: Option<f64>,
    /// Row CSV; without it the whole report goes to stdout as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn emit_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => output::write_json(value, create(p)?),
        None => output::write_json(value, io::stdout().lock()),
    }
}

fn cmd_enumerate(cfg: &Config, n: u64, dim: usize, out: Option<&Path>) -> Result<()> {
    let s = enumerate_solutions_with(n, dim, &cfg.limits)?;
    match out {
        Some(p) => write_solution_set(&s, create(p)?)?,
        None => write_solution_set(&s, io::stdout().lock())?,
    }
    let summary = format!(
        "n={n} dim={dim} N={} n_mod_8={} squarefree={}",
        s.len(),
        n % 8,
        n > 0 && is_squarefree(n)
    );
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn stats_source(cfg: &Config, a: &StatsArgs, seed: u64) -> Result<UnitPointSet> {
    if let Some(n) = a.n {
        return experiments::arithmetic_points(n, a.dim, &cfg.limits);
    }
    if let Some(path) = &a.input {
        let s = read_solution_set(BufReader::new(File::open(path)?))?;
        if s.is_empty() {
            return Err(Error::NonRepresentable { n: s.n(), dim: s.dim() });
        }
        return project_to_sphere(&s);
    }
    if let Some(count) = a.random {
        return sample_uniform_sphere(count, a.k, seed);
    }
    if let Some(count) = a.hex {
        return hex_patch(count);
    }
    Err(Error::InvalidArgument("one of --n, --input, --random, --hex is required".into()))
}

fn cmd_stats(cfg: &Config, a: &StatsArgs) -> Result<()> {
    let seed = a.seed.unwrap_or(cfg.seed);
    let points = stats_source(cfg, a, seed)?;
    eprintln!("stats: N = {}", points.len());
    let any = a.energy || a.spacing || !a.r.is_empty() || a.covering || a.discrepancy.is_some();
    let (energy, spacing) = if a.all || !any { (true, true) } else { (a.energy, a.spacing) };
    let default_mesh = if points.ambient_dim() == 4 { cfg.mesh_s3 } else { cfg.mesh_s2 };
    let opts = StatsOptions {
        ripley_thresholds: a.r.clone(),
        energy,
        spacing,
        covering_mesh: (a.all || a.covering).then(|| a.mesh.unwrap_or(default_mesh)),
        discrepancy_caps: a.discrepancy.or(a.all.then_some(1000)),
        seed,
        histogram: cfg.histogram,
        max_energy_pairs: cfg.max_energy_pairs,
        force: a.force,
    };
    let report = compute_report(&points, &opts)?;
    if let Some(p) = &a.histogram_out {
        match &report.spacing {
            Some(s) => output::write_histogram(&s.histogram, create(p)?)?,
            None => eprintln!("stats: no spacing data, {} not written", p.display()),
        }
    }
    if let Some(p) = &a.profile_out {
        match &report.ripley {
            Some(r) => output::write_profile(r, create(p)?)?,
            None => eprintln!("stats: no Ripley thresholds, {} not written", p.display()),
        }
    }
    emit_json(&report, a.out.as_deref())
}

fn cmd_table1(cfg: &Config, runs: Option<usize>, seed: Option<u64>, out: Option<&Path>) -> Result<()> {
    let rows = experiments::table1(runs.unwrap_or(cfg.runs), seed.unwrap_or(cfg.seed), &cfg.limits)?;
    output::write_table1_text(&rows, io::stdout().lock())?;
    if let Some(p) = out {
        output::write_table1(&rows, create(p)?)?;
    }
    Ok(())
}

fn parse_shift(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|v| {
            v.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad shift component {v:?}")))
        })
        .collect()
}

fn cmd_ensemble(cfg: &Config, a: &EnsembleArgs) -> Result<()> {
    let params = EnsembleParams {
        r_min: a.r_min,
        r_max: a.r_max,
        dim: a.dim,
        delta: a.delta.unwrap_or(cfg.calibration.ensemble_delta),
        squarefree_only: a.squarefree,
        exclude_mod_8: a.exclude_mod8.clone(),
        include_empty: a.include_empty,
        covering_mesh: a.mesh,
        shifts: a.shift.iter().map(|s| parse_shift(s)).collect::<Result<_>>()?,
        band: cfg.calibration.ensemble_median_band,
    };
    let report = experiments::ensemble(&params, &cfg.limits)?;
    eprintln!("ensemble: {} rows", report.rows.len());
    match &a.out {
        Some(p) => {
            output::write_ensemble_rows(&report.rows, create(p)?)?;
            emit_json(&report.summary, None)
        }
        None => emit_json(&report, None),
    }
}

fn cmd_figdata(
    cfg: &Config,
    which: Figure,
    n: Option<u64>,
    window: usize,
    seed: u64,
    dir: &Path,
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    match which {
        Figure::Fig1 => {
            let data = experiments::fig1(n.unwrap_or(1_299_709), window, seed, &cfg.limits)?;
            for patch in [&data.arithmetic, &data.random, &data.rigid] {
                let path = dir.join(format!("fig1_{}.csv", patch.label));
                output::write_patch(patch, create(&path)?)?;
                eprintln!("figdata: {} points -> {}", patch.xy.len(), path.display());
            }
            let summary = serde_json::json!({
                "n": data.n,
                "N": data.n_points,
                "radius": data.radius,
                "counts": {
                    "arithmetic": data.arithmetic.xy.len(),
                    "random": data.random.xy.len(),
                    "rigid": data.rigid.xy.len(),
                },
            });
            output::write_json(&summary, create(&dir.join("fig1_summary.json"))?)?;
            emit_json(&summary, None)
        }
        Figure::Fig2 => {
            let data = experiments::fig2(n.unwrap_or(179_424_691), cfg.histogram, &cfg.limits)?;
            output::write_histogram(&data.histogram, create(&dir.join("fig2_histogram.csv"))?)?;
            output::write_exponential_curve(
                cfg.histogram.max,
                500,
                create(&dir.join("fig2_curve.csv"))?,
            )?;
            let summary = serde_json::json!({
                "n": data.n,
                "N": data.n_points,
                "mean": data.mean,
                "ks": data.ks,
                "mass": data.histogram.total_mass(),
            });
            output::write_json(&summary, create(&dir.join("fig2_summary.json"))?)?;
            emit_json(&summary, None)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Enumerate { n, dim, out } => cmd_enumerate(&cfg, n, dim, out.as_deref()),
        Command::Stats(a) => cmd_stats(&cfg, &a),
        Command::Table1 { runs, seed, out } => cmd_table1(&cfg, runs, seed, out.as_deref()),
        Command::Ensemble(a) => cmd_ensemble(&cfg, &a),
        Command::Scaling { target, grid, runs, seed, mesh, out } => {
            let mut params = ScalingParams::new(target.parse::<ScalingTarget>()?);
            if !grid.is_empty() {
                params.grid = grid;
            }
            params.seeds = runs.unwrap_or(cfg.runs);
            params.seed = seed.unwrap_or(cfg.seed);
            params.mesh = mesh;
            let report = experiments::scaling(&params, &cfg.limits)?;
            if let Some(p) = &out {
                output::write_scaling(&report, create(p)?)?;
            }
            emit_json(&report, None)
        }
        Command::Figdata { which, n, window, seed, out } => {
            cmd_figdata(&cfg, which, n, window, seed.unwrap_or(cfg.seed), &out)
        }
        Command::Baseline { stat, points, k, runs, seed, r, mesh, caps, out } => {
            let default_mesh = if k == 3 { cfg.mesh_s3 } else { cfg.mesh_s2 };
            let stat = match stat {
                StatName::EnergyDeviation => Statistic::EnergyDeviation,
                StatName::Ripley => Statistic::Ripley {
                    r: r.ok_or_else(|| Error::InvalidArgument("--r is required".into()))?,
                },
                StatName::MinSpacing => Statistic::MinSpacing,
                StatName::Covering => Statistic::Covering { mesh: mesh.unwrap_or(default_mesh) },
                StatName::SpacingKs => Statistic::SpacingKs,
                StatName::Discrepancy => Statistic::Discrepancy { caps },
            };
            let summary = monte_carlo(
                &stat,
                points,
                k,
                runs.unwrap_or(cfg.runs),
                seed.unwrap_or(cfg.seed),
            )?;
            emit_json(&summary, out.as_deref())
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 2,
        Error::NonRepresentable { .. } => 4,
        Error::Io(_) | Error::Json(_) | Error::CoincidentPoints(..) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => {
            let _ = io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
