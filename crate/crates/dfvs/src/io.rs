//! Instance file formats and the scaling benchmark.
//!
//! Two formats are supported:
//!
//! * PACE (2022 feedback-vertex-set conventions): a header line `n m 0`,
//!   then n adjacency lines where line i holds the 1-indexed out-neighbors
//!   of vertex i; `%` starts a comment line.
//! * Edge list: lines `u v` with 0-indexed endpoints, `#` comments, and an
//!   optional header `dfvs n m` (without it, n is the largest id plus one).
//!
//! The format is auto-detected from the first meaningful line.

use crate::digraph::Digraph;
use anyhow::{bail, Context, Result};
use serde::Serialize;
use std::fmt::Write as _;

/// Instance file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pace,
    EdgeList,
}

/// Parses the PACE adjacency format.
pub fn parse_pace(text: &str) -> Result<Digraph> {
    let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('%'));
    let header = lines.next().context("missing header line")?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().context("header fields must be integers"))
        .collect::<Result<_>>()?;
    let [n, m] = fields[..2] else {
        bail!("header must be `n m 0`");
    };
    let mut arcs = Vec::with_capacity(m);
    let mut rows = 0;
    for line in lines {
        rows += 1;
        if rows > n {
            if line.trim().is_empty() {
                rows -= 1;
                continue;
            }
            bail!("more than {n} adjacency lines");
        }
        for tok in line.split_whitespace() {
            let w: usize = tok.parse().context("adjacency entries must be integers")?;
            if w == 0 || w > n {
                bail!("vertex {w} out of range 1..={n}");
            }
            arcs.push((rows - 1, w - 1));
        }
    }
    if rows < n {
        bail!("expected {n} adjacency lines, found {rows}");
    }
    if arcs.len() != m {
        bail!("header promises {m} arcs, found {}", arcs.len());
    }
    Ok(Digraph::new(n, arcs))
}

/// Parses the 0-indexed edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut max_id = 0usize;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "dfvs" {
            if declared.is_some() || !arcs.is_empty() {
                bail!("header `dfvs n m` must come first and appear once");
            }
            let [_, n, m] = toks[..] else {
                bail!("header must be `dfvs n m`");
            };
            declared = Some((n.parse()?, m.parse()?));
            continue;
        }
        let [u, v] = toks[..] else {
            bail!("expected `u v`, got: {line}");
        };
        let (u, v): (usize, usize) = (u.parse()?, v.parse()?);
        max_id = max_id.max(u).max(v);
        arcs.push((u, v));
    }
    let n = match declared {
        Some((n, m)) => {
            if arcs.len() != m {
                bail!("header promises {m} arcs, found {}", arcs.len());
            }
            if !arcs.is_empty() && max_id >= n {
                bail!("vertex {max_id} out of range 0..{n}");
            }
            n
        }
        None if arcs.is_empty() => 0,
        None => max_id + 1,
    };
    Ok(Digraph::new(n, arcs))
}

/// Detects the format from the first meaningful line.
pub fn detect_format(text: &str) -> Result<Format> {
    for raw in text.lines() {
        let line = raw.trim_start();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('%') {
            return Ok(Format::Pace);
        }
        if line.starts_with('#') || line.starts_with("dfvs") {
            return Ok(Format::EdgeList);
        }
        let toks = line.split_whitespace().count();
        return match toks {
            2 => Ok(Format::EdgeList),
            3 => Ok(Format::Pace),
            _ => bail!("cannot detect format from line: {line}"),
        };
    }
    bail!("empty input");
}

/// Parses with explicit or auto-detected format.
pub fn parse_digraph(text: &str, format: Option<Format>) -> Result<Digraph> {
    match format.map_or_else(|| detect_format(text), Ok)? {
        Format::Pace => parse_pace(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

/// Writes the PACE adjacency format.
pub fn write_pace(d: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} 0", d.n(), d.m());
    for v in 0..d.n() {
        let row: Vec<String> = d.out(v).iter().map(|&w| (w + 1).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Writes the edge-list format with its header.
pub fn write_edge_list(d: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dfvs {} {}", d.n(), d.m());
    for &(u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Canonical arc multiset for round-trip comparisons.
pub fn normalized_arcs(d: &Digraph) -> Vec<(usize, usize)> {
    let mut arcs = d.arcs().to_vec();
    arcs.sort_unstable();
    arcs
}

/// One benchmark size: the instance size and the median solve time.
#[derive(Clone, Debug, Serialize)]
pub struct BenchEntry {
    pub m: usize,
    pub n: usize,
    pub median_seconds: f64,
    pub reps: usize,
}

/// The scaling report: per-size medians and the ratio per size doubling.
#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub k: usize,
    pub entries: Vec<BenchEntry>,
    /// ratios[i] = median(sizes[i+1]) / median(sizes[i]).
    pub ratios: Vec<f64>,
}

/// Times the solver on planted instances of increasing size.
///
/// Each size gets `reps` fresh seeded instances; generation and parsing are
/// excluded from the timed region. The solver budget is k, matching the
/// planted optimum bound, so every run must succeed.
pub fn bench_scaling(k: usize, sizes: &[usize], reps: usize, seed: u64) -> BenchReport {
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "sizes must be increasing");
    let mut entries = Vec::new();
    for (i, &m) in sizes.iter().enumerate() {
        let n = (m / 3).max(k + 1);
        let mut times: Vec<f64> = (0..reps)
            .map(|rep| {
                let inst = crate::gen::gen_planted(n, m, k, seed ^ (i as u64) << 32 ^ rep as u64);
                // Untimed warmup run so first-touch page faults and allocator
                // growth do not leak into the measured region.
                let warm = crate::solver::solve_dfvs(&inst.digraph, k)
                    .expect("planted budget is always feasible");
                assert!(inst.digraph.is_acyclic_without(&warm.vertices));
                let start = std::time::Instant::now();
                let sol = crate::solver::solve_dfvs(&inst.digraph, k)
                    .expect("planted budget is always feasible");
                let elapsed = start.elapsed().as_secs_f64();
                assert!(inst.digraph.is_acyclic_without(&sol.vertices));
                elapsed
            })
            .collect();
        times.sort_by(|a, b| a.total_cmp(b));
        entries.push(BenchEntry { m, n, median_seconds: times[times.len() / 2], reps });
    }
    let ratios = entries
        .windows(2)
        .map(|w| w[1].median_seconds / w[0].median_seconds.max(1e-9))
        .collect();
    BenchReport { k, entries, ratios }
}
