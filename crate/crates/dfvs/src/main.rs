//! Command-line interface for the dfvs solver.
//!
//! Exit codes: 0 on success, 1 when the answer is NO (or a solution fails
//! verification), 2 on usage or input errors.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dfvs::digraph::Digraph;
use dfvs::io::{self, Format};
use dfvs::solver::{self, TraceEntry};
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "dfvs", version, about = "Exact directed feedback vertex/arc set solver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Pace,
    EdgeList,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Pace => Format::Pace,
            FormatArg::EdgeList => Format::EdgeList,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Find a minimum feedback vertex set of size <= k.
    Solve {
        #[arg(short, long)]
        k: usize,
        /// Instance file; stdin when omitted.
        input: Option<PathBuf>,
        /// Input format; auto-detected when omitted.
        #[arg(long)]
        format: Option<FormatArg>,
        /// Emit a JSON report instead of plain lines.
        #[arg(long)]
        json: bool,
        /// Include the recursion trace (JSON field, or JSON lines on stderr).
        #[arg(long)]
        trace: bool,
    },
    /// Find a minimum feedback arc set of size <= k.
    SolveArcs {
        #[arg(short, long)]
        k: usize,
        input: Option<PathBuf>,
        #[arg(long)]
        format: Option<FormatArg>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        trace: bool,
    },
    /// Check a solution file (1-indexed vertices, one per line) against an instance.
    Verify {
        /// Instance file; stdin when omitted.
        input: Option<PathBuf>,
        #[arg(short, long)]
        solution: PathBuf,
        /// Also require the solution to have size <= k.
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long)]
        format: Option<FormatArg>,
    },
    /// Generate a planted instance with optimum <= k.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        k: usize,
        /// Seed; falls back to $DFVS_SEED, then 1.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: FormatArg,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the scaling benchmark on planted instances and emit a JSON report.
    Bench {
        #[arg(short, long, default_value_t = 3)]
        k: usize,
        /// Comma-separated arc counts, strictly increasing.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve and print the recursion trace as JSON lines.
    Trace {
        #[arg(short, long)]
        k: usize,
        input: Option<PathBuf>,
        #[arg(long)]
        format: Option<FormatArg>,
    },
}

#[derive(Serialize)]
struct Timings {
    parse_seconds: f64,
    solve_seconds: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    answer: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arcs: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a [TraceEntry]>,
    timings: Timings,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Solve { k, input, format, json, trace } => {
            let (d, parse_seconds) = load(input.as_deref(), format)?;
            let start = Instant::now();
            let sol = solver::solve_dfvs(&d, k);
            let solve_seconds = start.elapsed().as_secs_f64();
            let timings = Timings { parse_seconds, solve_seconds };
            match sol {
                Some(sol) => {
                    if json {
                        let report = Report {
                            schema: 1,
                            answer: "yes",
                            size: Some(sol.vertices.len()),
                            vertices: Some(sol.vertices.iter().map(|v| v + 1).collect()),
                            arcs: None,
                            trace: trace.then_some(&sol.trace),
                            timings,
                        };
                        println!("{}", serde_json::to_string(&report)?);
                    } else {
                        if trace {
                            emit_trace(&sol.trace, &mut std::io::stderr())?;
                        }
                        for v in &sol.vertices {
                            println!("{}", v + 1);
                        }
                    }
                    Ok(0)
                }
                None => no_answer(json, timings),
            }
        }
        Cmd::SolveArcs { k, input, format, json, trace } => {
            let (d, parse_seconds) = load(input.as_deref(), format)?;
            let start = Instant::now();
            let sol = solver::solve_dfas(&d, k);
            let solve_seconds = start.elapsed().as_secs_f64();
            let timings = Timings { parse_seconds, solve_seconds };
            match sol {
                Some(sol) => {
                    if json {
                        let report = Report {
                            schema: 1,
                            answer: "yes",
                            size: Some(sol.arcs.len()),
                            vertices: None,
                            arcs: Some(sol.arcs.iter().map(|&(u, v)| (u + 1, v + 1)).collect()),
                            trace: trace.then_some(&sol.trace),
                            timings,
                        };
                        println!("{}", serde_json::to_string(&report)?);
                    } else {
                        if trace {
                            emit_trace(&sol.trace, &mut std::io::stderr())?;
                        }
                        for &(u, v) in &sol.arcs {
                            println!("{} {}", u + 1, v + 1);
                        }
                    }
                    Ok(0)
                }
                None => no_answer(json, timings),
            }
        }
        Cmd::Verify { input, solution, k, format } => {
            let (d, _) = load(input.as_deref(), format)?;
            let text = std::fs::read_to_string(&solution)
                .with_context(|| format!("reading {}", solution.display()))?;
            let set = parse_solution(&text, d.n())?;
            if let Some(k) = k {
                if set.len() > k {
                    println!("INVALID: {} vertices exceed budget {k}", set.len());
                    return Ok(1);
                }
            }
            if d.is_acyclic_without(&set) {
                println!("OK");
                Ok(0)
            } else {
                println!("INVALID: residual graph has a cycle");
                Ok(1)
            }
        }
        Cmd::Gen { n, m, k, seed, format, output } => {
            let inst = dfvs::gen::gen_planted(n, m, k, default_seed(seed));
            let comment = match format {
                FormatArg::Pace => format!("% planted: {:?}\n", inst.planted),
                FormatArg::EdgeList => format!("# planted: {:?}\n", inst.planted),
            };
            let body = match format {
                FormatArg::Pace => io::write_pace(&inst.digraph),
                FormatArg::EdgeList => io::write_edge_list(&inst.digraph),
            };
            let text = comment + &body;
            match output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::Bench { k, sizes, reps, seed } => {
            let report = io::bench_scaling(k, &sizes, reps, default_seed(seed));
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Cmd::Trace { k, input, format } => {
            let (d, parse_seconds) = load(input.as_deref(), format)?;
            let start = Instant::now();
            let sol = solver::solve_dfvs(&d, k);
            let solve_seconds = start.elapsed().as_secs_f64();
            let timings = Timings { parse_seconds, solve_seconds };
            match sol {
                Some(sol) => {
                    emit_trace(&sol.trace, &mut std::io::stdout())?;
                    let report = Report {
                        schema: 1,
                        answer: "yes",
                        size: Some(sol.vertices.len()),
                        vertices: Some(sol.vertices.iter().map(|v| v + 1).collect()),
                        arcs: None,
                        trace: None,
                        timings,
                    };
                    println!("{}", serde_json::to_string(&report)?);
                    Ok(0)
                }
                None => no_answer(true, timings),
            }
        }
    }
}

/// Reads and parses the instance, timing the parse.
fn load(path: Option<&std::path::Path>, format: Option<FormatArg>) -> Result<(Digraph, f64)> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    let start = Instant::now();
    let d = io::parse_digraph(&text, format.map(Format::from))?;
    Ok((d, start.elapsed().as_secs_f64()))
}

/// Parses a solution file: 1-indexed vertex ids, comments allowed.
fn parse_solution(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut set = Vec::new();
    for raw in text.lines() {
        let line = raw.split(['#', '%']).next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().context("solution entries must be integers")?;
            if v == 0 || v > n {
                bail!("vertex {v} out of range 1..={n}");
            }
            set.push(v - 1);
        }
    }
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

fn emit_trace(trace: &[TraceEntry], out: &mut impl std::io::Write) -> Result<()> {
    for entry in trace {
        writeln!(out, "{}", serde_json::to_string(entry)?)?;
    }
    Ok(())
}

fn no_answer(json: bool, timings: Timings) -> Result<i32> {
    if json {
        let report = Report {
            schema: 1,
            answer: "no",
            size: None,
            vertices: None,
            arcs: None,
            trace: None,
            timings,
        };
        println!("{}", serde_json::to_string(&report)?);
    } else {
        println!("NO");
    }
    Ok(1)
}

fn default_seed(explicit: Option<u64>) -> u64 {
    explicit
        .or_else(|| std::env::var("DFVS_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(1)
}
