//! `tricol`: decide 3-colourability of graphs with no long induced path and
//! no short odd cycle.
//!
//! Exit codes: 0 colourable / member / success, 1 not colourable / non-member
//! / cross-validation failure, 2 out of class, 3 search budget exhausted,
//! 64 usage or input error.

use std::fs::{self, File};
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use tricol::recognizers::{check_t, DEFAULT_NODE_BUDGET};
use tricol::solver::Solution;
use tricol::testkit::{
    brute_force_colour, gen, write_instance, GenKind, GeneratorConfig, InstanceMeta,
};
use tricol::{
    in_class, parse_dimacs, solve_with, Certificate, Graph, SolveOptions, SolveResult, Violation,
};

const SCHEMA_VERSION: u32 = 1;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_OUT_OF_CLASS: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "tricol",
    version,
    about = "Exact 3-colouring for (P_t, short odd cycle)-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide 3-colourability of a DIMACS graph.
    Solve {
        /// DIMACS file, or `-` for standard input.
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Palette-evaluation worker threads.
        #[arg(long, default_value_t = 1, value_parser = parse_jobs)]
        jobs: usize,
        /// Evaluate every palette and check the emission contract.
        #[arg(long)]
        audit: bool,
        /// Include per-component statistics in JSON output.
        #[arg(long)]
        stats: bool,
    },
    /// Report class membership, with a violation certificate if any.
    Check {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Write a corpus of generated in-class instances.
    Gen {
        #[arg(long, default_value = "random", value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long, default_value_t = 24)]
        n: usize,
        #[arg(long, default_value_t = 0.08)]
        p: f64,
        #[arg(long, default_value_t = 9, value_parser = parse_t)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Base seed; instance `i` uses `seed + i`. Drawn from the clock and
        /// printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        max_attempts: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the solver with exhaustive search on every `.col` file in a
    /// directory.
    Crossval {
        dir: PathBuf,
        #[arg(long, default_value_t = 9, value_parser = parse_t)]
        t: usize,
        /// Skip instances with more vertices than this.
        #[arg(long, default_value_t = 40)]
        n_cap: usize,
        /// Instances processed in parallel.
        #[arg(long, default_value_t = 1, value_parser = parse_jobs)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(clap::Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 9, value_parser = parse_t)]
    t: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node limit for the induced-path search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_t(s: &str) -> Result<usize, String> {
    let t: usize = s.parse().map_err(|e| format!("{e}"))?;
    check_t(t).map_err(|e| e.to_string())?;
    Ok(t)
}

fn parse_jobs(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("jobs must be at least 1".into()),
        Ok(j) => Ok(j),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse()
}

/// An input error that maps to exit code 64.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<InputError>() {
                EXIT_USAGE
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8> {
    match cli.command {
        Command::Solve {
            input,
            common,
            jobs,
            audit,
            stats,
        } => {
            let g = read_graph(&input)?;
            let opts = SolveOptions {
                jobs,
                audit,
                node_budget: common.node_budget,
                ..SolveOptions::new(common.t)
            };
            let sol = solve_with(&g, &opts).map_err(|e| InputError(e.to_string()))?;
            report_solution(out, &sol, common.t, common.format, stats)?;
            Ok(match sol.result {
                SolveResult::ThreeColourable(_) | SolveResult::Bipartite(_) => EXIT_OK,
                SolveResult::NotThreeColourable => EXIT_NEGATIVE,
                SolveResult::OutOfClass(_) => EXIT_OUT_OF_CLASS,
            })
        }
        Command::Check { input, common } => {
            let g = read_graph(&input)?;
            let report = match in_class(&g, common.t, common.node_budget) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(EXIT_BUDGET);
                }
            };
            let violation = report.violation.as_ref().map(violation_json);
            match common.format {
                Format::Json => {
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "t": common.t,
                        "member": report.is_member,
                        "violation": violation,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
                Format::Text => match &report.violation {
                    None => writeln!(out, "member")?,
                    Some(v) => writeln!(
                        out,
                        "non-member {}",
                        certificate_line(&Certificate::from(v.clone()))
                    )?,
                },
            }
            Ok(if report.is_member {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Gen {
            kind,
            n,
            p,
            t,
            count,
            seed,
            max_attempts,
            out: dir,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(InputError(format!("p must lie in [0, 1], got {p}")).into());
            }
            let seed = seed.unwrap_or_else(clock_seed);
            writeln!(out, "seed {seed}")?;
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let mut written = 0;
            for i in 0..count {
                let mut cfg = GeneratorConfig::new(kind, n, t, seed.wrapping_add(i));
                cfg.p = p;
                cfg.max_attempts = max_attempts;
                let Some(inst) = gen(&cfg) else { continue };
                let meta = InstanceMeta {
                    name: format!("{kind}-t{t}-{i:05}"),
                    kind,
                    t,
                    seed: cfg.seed,
                    attempt: inst.attempt,
                    n: inst.graph.vertex_count(),
                    m: inst.graph.edge_count(),
                    verdict: None,
                };
                write_instance(&dir, &inst.graph, &meta)?;
                written += 1;
            }
            writeln!(
                out,
                "wrote {written} of {count} instances to {}",
                dir.display()
            )?;
            Ok(EXIT_OK)
        }
        Command::Crossval {
            dir,
            t,
            n_cap,
            jobs,
            format,
        } => crossval(out, &dir, t, n_cap, jobs, format),
    }
}

fn clock_seed() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0)
}

fn read_graph(path: &Path) -> Result<Graph> {
    let parsed = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| InputError(e.to_string()))?;
        parse_dimacs(&buf[..])
    } else {
        let file = File::open(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        parse_dimacs(BufReader::new(file))
    };
    parsed.map_err(|e| InputError(format!("{}: {e}", path.display())).into())
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn violation_json(v: &Violation) -> serde_json::Value {
    certificate_json(&Certificate::from(v.clone()))
}

fn certificate_json(c: &Certificate) -> serde_json::Value {
    match c {
        Certificate::ShortOddCycle { vertices } => {
            json!({"kind": "short_odd_cycle", "vertices": one_based(vertices)})
        }
        Certificate::InducedPath { vertices } => {
            json!({"kind": "induced_path", "vertices": one_based(vertices)})
        }
        Certificate::Structural { reason } => json!({"kind": "structural", "reason": reason}),
    }
}

fn certificate_line(c: &Certificate) -> String {
    let list = |vs: &[usize]| {
        one_based(vs)
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    match c {
        Certificate::ShortOddCycle { vertices } => format!("short-odd-cycle {}", list(vertices)),
        Certificate::InducedPath { vertices } => format!("induced-path {}", list(vertices)),
        Certificate::Structural { reason } => format!("structural {reason}"),
    }
}

fn verdict_name(r: &SolveResult) -> &'static str {
    match r {
        SolveResult::ThreeColourable(_) => "three_colourable",
        SolveResult::Bipartite(_) => "bipartite",
        SolveResult::NotThreeColourable => "not_three_colourable",
        SolveResult::OutOfClass(_) => "out_of_class",
    }
}

fn report_solution(
    out: &mut impl Write,
    sol: &Solution,
    t: usize,
    format: Format,
    stats: bool,
) -> Result<()> {
    match format {
        Format::Json => {
            let mut doc = json!({
                "schema_version": SCHEMA_VERSION,
                "t": t,
                "verdict": verdict_name(&sol.result),
            });
            if let Some(c) = sol.result.colouring() {
                doc["colouring"] = json!(c);
            }
            if let SolveResult::OutOfClass(cert) = &sol.result {
                doc["certificate"] = certificate_json(cert);
            }
            if stats {
                doc["stats"] = serde_json::to_value(&sol.stats)?;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Text => match &sol.result {
            SolveResult::ThreeColourable(c) | SolveResult::Bipartite(c) => {
                writeln!(out, "s 3-colourable")?;
                for (v, col) in c.iter().enumerate() {
                    writeln!(out, "v {} {}", v + 1, col)?;
                }
            }
            SolveResult::NotThreeColourable => writeln!(out, "s not-3-colourable")?,
            SolveResult::OutOfClass(cert) => {
                writeln!(out, "s out-of-class")?;
                writeln!(out, "c {}", certificate_line(cert))?;
            }
        },
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct CrossvalRow {
    name: String,
    n: usize,
    status: &'static str,
    micros: u128,
    detail: Option<String>,
}

fn crossval_one(path: &Path, t: usize, n_cap: usize) -> CrossvalRow {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let row = |n, status, micros, detail| CrossvalRow {
        name: name.clone(),
        n,
        status,
        micros,
        detail,
    };
    let g = match read_graph(path) {
        Ok(g) => g,
        Err(e) => return row(0, "unreadable", 0, Some(format!("{e:#}"))),
    };
    let n = g.vertex_count();
    if n > n_cap {
        return row(n, "skipped", 0, None);
    }
    match in_class(&g, t, DEFAULT_NODE_BUDGET) {
        Ok(r) if !r.is_member => return row(n, "out_of_class", 0, None),
        Ok(_) => {}
        Err(e) => return row(n, "unreadable", 0, Some(e.to_string())),
    }
    let start = Instant::now();
    let sol = solve_with(&g, &SolveOptions::new(t)).expect("t validated on the command line");
    let micros = start.elapsed().as_micros();
    let truth = brute_force_colour(&g, None).expect("n is within the oracle cap");
    let invariant = sol.stats.components.iter().find_map(|c| {
        if c.irreducible_events > 0 {
            Some("irreducible list-size-3 component".to_string())
        } else if c.nice_reduction_violations > 0 {
            Some("nice-reduction contract violated".to_string())
        } else {
            c.violated_bounds()
                .next()
                .map(|b| format!("bound {} violated: {} > {}", b.name, b.value, b.bound))
        }
    });
    let agree = match &sol.result {
        SolveResult::OutOfClass(_) => false,
        r => r.is_colourable() == truth.is_some(),
    };
    match (agree, invariant) {
        (false, _) => row(
            n,
            "disagree",
            micros,
            Some(format!(
                "solver {}, oracle colourable = {}",
                verdict_name(&sol.result),
                truth.is_some()
            )),
        ),
        (true, Some(why)) => row(n, "invariant", micros, Some(why)),
        (true, None) => row(n, "agree", micros, None),
    }
}

fn percentile(sorted: &[u128], q: f64) -> u128 {
    if sorted.is_empty() {
        return 0;
    }
    let k = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[k]
}

fn crossval(
    out: &mut impl Write,
    dir: &Path,
    t: usize,
    n_cap: usize,
    jobs: usize,
    format: Format,
) -> Result<u8> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| InputError(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "col"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let rows: Vec<CrossvalRow> = pool.install(|| {
        files
            .par_iter()
            .map(|p| crossval_one(p, t, n_cap))
            .collect()
    });

    let count = |s: &str| rows.iter().filter(|r| r.status == s).count();
    let mut times: Vec<u128> = rows
        .iter()
        .filter(|r| r.status == "agree")
        .map(|r| r.micros)
        .collect();
    times.sort_unstable();
    let summary = json!({
        "instances": rows.len(),
        "agree": count("agree"),
        "disagree": count("disagree"),
        "invariant_failures": count("invariant"),
        "out_of_class": count("out_of_class"),
        "skipped": count("skipped"),
        "unreadable": count("unreadable"),
        "solve_micros": {
            "p50": percentile(&times, 0.5),
            "p90": percentile(&times, 0.9),
            "p99": percentile(&times, 0.99),
            "max": times.last().copied().unwrap_or(0),
        },
    });
    match format {
        Format::Json => {
            let doc = json!({"schema_version": SCHEMA_VERSION, "t": t, "summary": summary, "instances": rows});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Text => {
            for r in rows
                .iter()
                .filter(|r| !matches!(r.status, "agree" | "skipped" | "out_of_class"))
            {
                writeln!(
                    out,
                    "{:<10} {} {}",
                    r.status,
                    r.name,
                    r.detail.as_deref().unwrap_or("")
                )?;
            }
            for key in [
                "instances",
                "agree",
                "disagree",
                "invariant_failures",
                "out_of_class",
                "skipped",
                "unreadable",
            ] {
                writeln!(out, "{key:<20} {}", summary[key])?;
            }
            let s = &summary["solve_micros"];
            writeln!(
                out,
                "{:<20} p50 {} / p90 {} / p99 {} / max {}",
                "solve time (us)", s["p50"], s["p90"], s["p99"], s["max"]
            )?;
        }
    }
    let failed = count("disagree") + count("invariant") + count("unreadable");
    Ok(if failed > 0 { EXIT_NEGATIVE } else { EXIT_OK })
}
