use crate::error::{Error, Result};
use crate::grids::{Triple, TripleSystem};
use std::io::Write;

/// Writes a system as CSV with a universe header comment:
///
/// ```text
/// # universes 3 3 5
/// row,col,label
/// 0,0,0
/// ...
/// ```
///
/// The comment records universe sizes `R C L`, meaning `0..R`, `0..C`,
/// `0..L`; systems with non-contiguous universes are stored by their
/// extent (max value + 1). Triples are written in sorted row-major order,
/// making the output canonical for a given system.
pub fn write_csv<W: Write>(ts: &TripleSystem, mut w: W) -> std::io::Result<()> {
    let extent = |u: &[usize]| u.last().map_or(0, |&m| m + 1);
    writeln!(
        w,
        "# universes {} {} {}",
        extent(ts.rows()),
        extent(ts.cols()),
        extent(ts.labels())
    )?;
    writeln!(w, "row,col,label")?;
    for &(r, c, l) in ts.triples() {
        writeln!(w, "{r},{c},{l}")?;
    }
    Ok(())
}

/// Parses the format written by [`write_csv`]. The universe comment is
/// optional; without it, universes default to `0..=max` of the values seen
/// per coordinate. Blank lines are ignored.
pub fn read_csv(input: &str) -> Result<TripleSystem> {
    let mut universes: Option<(usize, usize, usize)> = None;
    let mut header_seen = false;
    let mut triples: Vec<Triple> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(spec) = rest.strip_prefix("universes") {
                let parts: Vec<&str> = spec.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(format!(
                        "line {}: universe comment needs three sizes",
                        lineno + 1
                    )));
                }
                let mut sizes = [0usize; 3];
                for (i, part) in parts.iter().enumerate() {
                    sizes[i] = part.parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad universe size `{part}`", lineno + 1))
                    })?;
                }
                universes = Some((sizes[0], sizes[1], sizes[2]));
            }
            continue;
        }
        if !header_seen {
            if line != "row,col,label" {
                return Err(Error::Parse(format!(
                    "line {}: expected header `row,col,label`, found `{line}`",
                    lineno + 1
                )));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected three comma-separated values",
                lineno + 1
            )));
        }
        let mut vals = [0usize; 3];
        for (i, f) in fields.iter().enumerate() {
            vals[i] = f.trim().parse().map_err(|_| {
                Error::Parse(format!("line {}: bad number `{f}`", lineno + 1))
            })?;
        }
        triples.push((vals[0], vals[1], vals[2]));
    }
    if !header_seen {
        return Err(Error::Parse("missing `row,col,label` header".into()));
    }
    let (nr, nc, nl) = match universes {
        Some(u) => u,
        None => {
            let max0 = triples.iter().map(|t| t.0).max().map_or(0, |m| m + 1);
            let max1 = triples.iter().map(|t| t.1).max().map_or(0, |m| m + 1);
            let max2 = triples.iter().map(|t| t.2).max().map_or(0, |m| m + 1);
            (max0, max1, max2)
        }
    };
    TripleSystem::from_triples(
        (0..nr).collect(),
        (0..nc).collect(),
        (0..nl).collect(),
        triples,
    )
}
