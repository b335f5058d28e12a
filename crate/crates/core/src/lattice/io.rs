//! Integer-only CSV formats.
//!
//! Point sets: the first line is `dim,n`, followed by one row of `dim`
//! integer coordinates per point, in canonical order.
//! Pair correlations: a `t,count` header, then one row per nonzero `A(n, t)`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::{PairCorrelationTable, SolutionSet};

pub fn write_solution_set<W: Write>(s: &SolutionSet, mut w: W) -> Result<()> {
    writeln!(w, "{},{}", s.dim(), s.n())?;
    for p in s.points() {
        let row: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

fn parse_ints<T: std::str::FromStr>(line: &str, lineno: usize) -> Result<Vec<T>> {
    line.split(',')
        .map(|f| {
            f.trim().parse::<T>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("not an integer: {f:?}"),
            })
        })
        .collect()
}

pub fn read_solution_set<R: BufRead>(r: R) -> Result<SolutionSet> {
    let mut lines = r.lines().enumerate().filter(|(_, l)| match l {
        Ok(l) => !l.trim().is_empty(),
        Err(_) => true,
    });
    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let header: Vec<u64> = parse_ints(&header?, 1)?;
    let [dim, n] = header[..] else {
        return Err(Error::Parse { line: 1, msg: "header must be `dim,n`".into() });
    };
    let dim = dim as usize;
    let mut coords = Vec::new();
    for (i, line) in lines {
        let row: Vec<i32> = parse_ints(&line?, i + 1)?;
        if row.len() != dim {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {dim} coordinates, got {}", row.len()),
            });
        }
        coords.extend(row);
    }
    SolutionSet::from_points(n, dim, coords)
}

pub fn write_pair_correlation<W: Write>(table: &PairCorrelationTable, mut w: W) -> Result<()> {
    writeln!(w, "t,count")?;
    for (t, c) in &table.entries {
        writeln!(w, "{t},{c}")?;
    }
    Ok(())
}

pub fn read_pair_correlation<R: BufRead>(n: u64, r: R) -> Result<PairCorrelationTable> {
    let mut entries = std::collections::BTreeMap::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let row: Vec<i64> = parse_ints(&line, i + 1)?;
        let [t, c] = row[..] else {
            return Err(Error::Parse { line: i + 1, msg: "expected `t,count`".into() });
        };
        entries.insert(t, c as u64);
    }
    Ok(PairCorrelationTable { n, entries })
}
