//! CSV and JSON emitters. Floats are written in shortest round-trip form.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::sphere_stats::{Histogram, RipleyProfile};

use super::{EnsembleRow, Patch, ScalingReport, Table1Row};

pub fn write_json<W: Write, T: Serialize>(value: &T, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

/// `left,right,mass`, one row per bin, then the overflow row with `right = inf`.
pub fn write_histogram<W: Write>(h: &Histogram, mut w: W) -> Result<()> {
    writeln!(w, "left,right,mass")?;
    for (i, m) in h.masses.iter().enumerate() {
        writeln!(w, "{},{},{}", h.edges[i], h.edges[i + 1], m)?;
    }
    writeln!(w, "{},inf,{}", h.edges.last().copied().unwrap_or(0.0), h.overflow)?;
    Ok(())
}

/// `r,count,normalized`, one row per threshold.
pub fn write_profile<W: Write>(p: &RipleyProfile, mut w: W) -> Result<()> {
    writeln!(w, "r,count,normalized")?;
    for ((r, c), z) in p.thresholds.iter().zip(&p.counts).zip(&p.normalized) {
        writeln!(w, "{r},{c},{z}")?;
    }
    Ok(())
}

/// Samples of the exponential density `e^{−s}` on `[0, max]`.
pub fn write_exponential_curve<W: Write>(max: f64, samples: usize, mut w: W) -> Result<()> {
    writeln!(w, "s,density")?;
    for i in 0..=samples {
        let s = max * i as f64 / samples as f64;
        writeln!(w, "{},{}", s, (-s).exp())?;
    }
    Ok(())
}

pub fn write_patch<W: Write>(p: &Patch, mut w: W) -> Result<()> {
    writeln!(w, "x,y")?;
    for xy in &p.xy {
        writeln!(w, "{},{}", xy[0], xy[1])?;
    }
    Ok(())
}

pub fn write_table1<W: Write>(rows: &[Table1Row], mut w: W) -> Result<()> {
    writeln!(w, "n,N,integer,random_mean,random_std,runs")?;
    for r in rows {
        let std = r.random_std.map(|s| s.to_string()).unwrap_or_default();
        writeln!(w, "{},{},{},{},{},{}", r.n, r.n_points, r.integer, r.random_mean, std, r.runs)?;
    }
    Ok(())
}

/// Human-readable layout with values rounded to integers.
pub fn write_table1_text<W: Write>(rows: &[Table1Row], mut w: W) -> Result<()> {
    writeln!(w, "{:>10} {:>6} {:>10} {:>10}", "n", "N", "integer", "random")?;
    for r in rows {
        writeln!(
            w,
            "{:>10} {:>6} {:>10.0} {:>10.0}",
            r.n, r.n_points, r.integer, r.random_mean
        )?;
    }
    Ok(())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_ensemble_rows<W: Write>(rows: &[EnsembleRow], mut w: W) -> Result<()> {
    writeln!(
        w,
        "n,N,squarefree,n_mod_8,r,k_hat,expected,normalized,deviation,m_times_N,covering,running_mean,running_var"
    )?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.n_points,
            r.squarefree,
            r.n_mod_8,
            r.r,
            r.k_hat,
            r.expected,
            opt(r.normalized),
            r.deviation,
            opt(r.m_times_n),
            opt(r.covering),
            r.running_mean,
            r.running_var
        )?;
    }
    Ok(())
}

/// `param,N,log_N,mean_log_value,runs`, one row per grid point.
pub fn write_scaling<W: Write>(report: &ScalingReport, mut w: W) -> Result<()> {
    writeln!(w, "param,N,log_N,mean_log_value,runs")?;
    for p in &report.points {
        writeln!(
            w,
            "{},{},{},{},{}",
            p.param,
            p.n_points,
            (p.n_points as f64).ln(),
            p.mean_log,
            p.values.len()
        )?;
    }
    Ok(())
}
