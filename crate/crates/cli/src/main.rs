use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tdss_core::closure::{reachability_delta, temporal_closure};
use tdss_core::expansion::{build_expansion, expansion_diameter_check, shortcut_via_expansion, to_dot};
use tdss_core::format::{parse_edges_for, parse_graph, write_edges, write_graph};
use tdss_core::path::{find_temporal_breaks, shortcut_temporal_path};
use tdss_core::reach::{base_diameter, reach_matrix, temporal_diameter};
use tdss_core::shortcut::DEFAULT_MULTIPLIER;
use tdss_core::testkit::{gen, Family, GeneratorSpec};
use tdss_core::{ClosureKind, Constructor, Error, PathMode, TemporalEdge, TemporalGraph, Time};

mod report;

use report::{named, LedgerCounts, Parameters, Report, Results};

#[derive(Parser)]
#[command(name = "tdss", version, about = "Temporal diameter shortcut sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print statistics, temporal diameter and breaks.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a shortcut set and write a JSON report.
    Shortcut {
        input: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        target: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MULTIPLIER)]
        multiplier: f64,
        /// Report destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the shortcuts as an edge list.
        #[arg(long)]
        edges: Option<PathBuf>,
    },
    /// Check a shortcut set (edge list or report) against a target.
    Verify {
        input: PathBuf,
        #[arg(long)]
        shortcuts: PathBuf,
        #[arg(long)]
        target: u32,
    },
    /// Summarize the static expansion, optionally as DOT.
    Expand {
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Reachability added by a labelled transitive closure.
    Closure {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Generate a seeded instance as an edge list.
    Gen {
        #[command(subcommand)]
        family: GenArg,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    PathGreedy,
    PathRandom,
    ExpansionGreedy,
    ExpansionRandom,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Eat,
    Ldt,
    Full,
}

#[derive(Subcommand)]
enum GenArg {
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        t_max: Time,
        /// Comma-separated labels, overriding random ones.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<Time>>,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t_max: Time,
    },
    Layered {
        #[arg(long)]
        layers: usize,
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

/// Exit status for a library error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidLabel(_) | Error::SelfLoop(_) | Error::UnknownVertex(_) => 2,
        Error::NoEdges
        | Error::VertexSetMismatch
        | Error::NotAugmentation
        | Error::CyclicInput
        | Error::NotAPath(_)
        | Error::NotSimple(..)
        | Error::NotForward(..)
        | Error::MalformedEdge(_)
        | Error::InvalidShortcut(..)
        | Error::TimeOutOfRange(_) => 3,
        Error::InvalidTarget(_) | Error::TargetTooSmall(..) | Error::TooLarge(..) | Error::Infeasible(_) => 4,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<TemporalGraph> {
    let text = read(path)?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn show(v: Option<u32>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

/// `Ok(true)` when the command's goal was met.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Analyze { input, json } => analyze(&input, json),
        Command::Shortcut {
            input,
            method,
            target,
            seed,
            multiplier,
            out,
            edges,
        } => shortcut(&input, method, target, seed, multiplier, out.as_deref(), edges.as_deref()),
        Command::Verify { input, shortcuts, target } => verify(&input, &shortcuts, target),
        Command::Expand { input, dot } => expand(&input, dot.as_deref()),
        Command::Closure { input, kind } => closure(&input, kind),
        Command::Gen { family, seed, out } => {
            let family = match family {
                GenArg::Path { n, t_max, labels } => Family::TemporalPath { n, t_max, labels },
                GenArg::Random { n, m, t_max } => Family::RandomTemporal { n, m, t_max },
                GenArg::Layered { layers, width, density } => Family::LayeredDag { layers, width, density },
            };
            let g = gen(&GeneratorSpec { family, seed })?;
            emit(out.as_deref(), &write_graph(&g))?;
            Ok(true)
        }
    }
}

fn analyze(input: &Path, as_json: bool) -> anyhow::Result<bool> {
    let g = load(input)?;
    let stats = g.stats()?;
    let diameter = temporal_diameter(&g, PathMode::Strict);
    let pairs = reach_matrix(&g, PathMode::Strict).proper_pairs().count();
    let breaks = find_temporal_breaks(&g)
        .ok()
        .map(|b| b.iter().map(|b| g.name(b.vertex).to_string()).collect::<Vec<_>>());
    if as_json {
        let doc = json!({ "input": stats, "diameter": diameter, "reachable_pairs": pairs, "breaks": breaks });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "{} vertices, {} edges, labels {}..={}, lifetime {}",
            stats.n, stats.m, stats.t_min, stats.t_max, stats.lifetime
        );
        println!("diameter {}, {pairs} reachable pairs", show(diameter));
        match breaks {
            Some(b) => println!("breaks [{}]", b.join(", ")),
            None => println!("breaks n/a (footprint is not a path)"),
        }
    }
    Ok(true)
}

fn shortcut(
    input: &Path,
    method: MethodArg,
    target: u32,
    seed: u64,
    multiplier: f64,
    out: Option<&Path>,
    edges_out: Option<&Path>,
) -> anyhow::Result<bool> {
    let g = load(input)?;
    let start = Instant::now();
    let (name, constructor) = match method {
        MethodArg::PathGreedy => ("path-greedy", Constructor::Greedy),
        MethodArg::PathRandom => ("path-random", Constructor::Random { seed, multiplier }),
        MethodArg::ExpansionGreedy => ("expansion-greedy", Constructor::Greedy),
        MethodArg::ExpansionRandom => ("expansion-random", Constructor::Random { seed, multiplier }),
    };
    let randomized = matches!(constructor, Constructor::Random { .. });
    let mut results = Results {
        diameter_before: temporal_diameter(&g, PathMode::Strict),
        ..Results::default()
    };
    let (shortcuts, ok) = match method {
        MethodArg::PathGreedy | MethodArg::PathRandom => {
            let o = shortcut_temporal_path(&g, target, constructor)?;
            results.static_shortcuts = o.segments.iter().map(|s| s.static_shortcuts).sum();
            results.base_diameter_after = o.report.base_diameter;
            results.diameter_after = o.report.diameter;
            results.new_pairs = o.report.new_pairs.len();
            let ok = o.report.base_diameter.map_or(true, |k| k <= target);
            (o.shortcuts.edges, ok)
        }
        MethodArg::ExpansionGreedy | MethodArg::ExpansionRandom => {
            let o = shortcut_via_expansion(&g, target, constructor)?;
            results.expansion_diameter_before = o.expansion_diameter_before;
            results.expansion_diameter = o.expansion_diameter_after;
            results.static_shortcuts = o.static_shortcuts.len();
            results.ledger = Some(LedgerCounts::from(&o.ledger));
            results.base_diameter_after = o.report.base_diameter;
            results.diameter_after = o.report.diameter;
            results.new_pairs = o.report.new_pairs.len();
            let ok = o.expansion_diameter_after.map_or(true, |k| k <= target);
            (o.shortcuts.edges, ok)
        }
    };
    let report = Report {
        command: "shortcut".into(),
        input: g.stats()?,
        parameters: Parameters {
            method: name.into(),
            target,
            seed: randomized.then_some(seed),
            multiplier: randomized.then_some(multiplier),
        },
        results,
        shortcuts: named(&g, &shortcuts),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    if let Some(p) = edges_out {
        fs::write(p, write_edges(&g, &shortcuts)).with_context(|| format!("writing {}", p.display()))?;
    }
    eprintln!(
        "{name}: {} shortcuts, base diameter {} -> {}, {} new pairs",
        shortcuts.len(),
        show(report.results.diameter_before),
        show(report.results.base_diameter_after),
        report.results.new_pairs
    );
    Ok(ok)
}

/// Shortcuts from either a report or an edge list.
fn load_shortcuts(g: &TemporalGraph, path: &Path) -> anyhow::Result<Vec<TemporalEdge>> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let report: Report = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        report
            .shortcuts
            .iter()
            .map(|(t, h, l)| Ok(TemporalEdge::new(g.require_vertex(t)?, g.require_vertex(h)?, *l)))
            .collect()
    } else {
        Ok(parse_edges_for(g, &text).with_context(|| format!("parsing {}", path.display()))?)
    }
}

fn verify(input: &Path, shortcuts: &Path, target: u32) -> anyhow::Result<bool> {
    let g = load(input)?;
    let edges = load_shortcuts(&g, shortcuts)?;
    let overlap = edges.iter().filter(|e| g.contains_edge(e)).count();
    if overlap > 0 {
        eprintln!("warning: {overlap} shortcut(s) already in the graph");
    }
    let aug = g.with_edges(edges)?;
    let r = base_diameter(&g, &aug, PathMode::Strict)?;
    let ok = r.base_diameter.map_or(true, |k| k <= target);
    println!(
        "{}: achieved {}, target {target}, new-pairs={}",
        if ok { "ok" } else { "fail" },
        show(r.base_diameter),
        r.new_pairs.len()
    );
    Ok(ok)
}

fn expand(input: &Path, dot: Option<&Path>) -> anyhow::Result<bool> {
    let g = load(input)?;
    let x = build_expansion(&g)?;
    if let Some(p) = dot {
        fs::write(p, to_dot(&g, &x, None)).with_context(|| format!("writing {}", p.display()))?;
    }
    let check = expansion_diameter_check(&g)?;
    println!("{} vertices, {} edges, {check}", x.n(), x.graph.m());
    Ok(true)
}

fn closure(input: &Path, kind: KindArg) -> anyhow::Result<bool> {
    let g = load(input)?;
    let kind = match kind {
        KindArg::Eat => ClosureKind::EarliestArrival,
        KindArg::Ldt => ClosureKind::LatestDeparture,
        KindArg::Full => ClosureKind::FullLifecycle,
    };
    let closed = temporal_closure(&g, kind)?;
    let delta = reachability_delta(&g, &closed)?;
    let added: Vec<_> = delta
        .added_pairs
        .iter()
        .zip(&delta.witness_paths)
        .map(|(&(u, v), w)| json!({ "pair": [g.name(u), g.name(v)], "witness": named(&closed, w) }))
        .collect();
    let doc = json!({
        "kind": kind,
        "closure_edges": closed.m() - g.m(),
        "added_pairs": added,
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e
                .chain()
                .find_map(|c| c.downcast_ref::<Error>())
                .map_or(1, exit_code);
            ExitCode::from(code)
        }
    }
}
