//! The `tg-v1` edge-list text format.
//!
//! One edge per line as `tail head label`, separated by whitespace. Lines
//! starting with `#` are comments; blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{build_graph, TemporalEdge, TemporalGraph};

/// Parses `tg-v1` text into `(tail, head, label)` triples.
pub fn parse_triples(text: &str) -> Result<Vec<(String, String, i64)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(format!(
                "expected `tail head label`, found {} field(s) in `{line}`",
                fields.len()
            )));
        }
        let label: i64 = fields[2]
            .parse()
            .map_err(|_| parse_err(format!("label `{}` is not an integer", fields[2])))?;
        if label < 0 {
            return Err(parse_err(format!("label {label} is negative")));
        }
        if fields[0] == fields[1] {
            return Err(parse_err(format!("self-loop on `{}`", fields[0])));
        }
        out.push((fields[0].to_string(), fields[1].to_string(), label));
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<TemporalGraph> {
    build_graph(parse_triples(text)?)
}

/// Resolves `tg-v1` edges against the vertex table of `g`.
pub fn parse_edges_for(g: &TemporalGraph, text: &str) -> Result<Vec<TemporalEdge>> {
    parse_triples(text)?
        .into_iter()
        .map(|(t, h, l)| Ok(TemporalEdge::new(g.require_vertex(&t)?, g.require_vertex(&h)?, l as u64)))
        .collect()
}

pub fn write_graph(g: &TemporalGraph) -> String {
    write_edges(g, g.edges())
}

pub fn write_edges<'a, I>(g: &TemporalGraph, edges: I) -> String
where
    I: IntoIterator<Item = &'a TemporalEdge>,
{
    let mut s = String::new();
    for e in edges {
        let _ = writeln!(s, "{} {} {}", g.name(e.tail), g.name(e.head), e.label);
    }
    s
}
