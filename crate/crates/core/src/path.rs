//! Shortcutting temporal graphs whose footprint is a directed path.
//!
//! A vertex whose outgoing label does not exceed its incoming label is a
//! temporal break: nothing before it reaches anything after it. Cutting the
//! path at every break leaves segments that are temporal paths on their own.
//! Each segment is shortcut with a static construction on its footprint and
//! every static shortcut `(p_i, p_j)` is given a label from the span
//! `[t_i, t_{j-1}]` of edges it jumps over, which makes every static path a
//! valid temporal path, so hop distances inside a segment equal the static
//! ones exactly.
//!
//! Labels are picked as low as possible (`t_i`) except next to a break. For
//! each break `p_x` a threshold `θ_x` in `[t_out, t_in]` is fixed; shortcuts
//! ending at `p_x` get a label `>= θ_x` and shortcuts leaving it a label
//! `<= θ_x`, so nothing can be chained across the break. A shortcut spanning
//! a whole middle segment needs both bounds at once; when the thresholds
//! cannot be ordered for it, it necessarily opens a new reachable pair. In
//! that case it is swapped for a two-hop detour if the target allows it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{StaticGraph, TemporalEdge, TemporalGraph, Time, VertexId};
use crate::reach::{base_diameter, DiameterReport, PathMode};
use crate::shortcut::{Constructor, ShortcutOrigin, ShortcutSet, TemporalShortcutSet};
use crate::static_algos::static_diameter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalBreak {
    pub vertex: VertexId,
    pub in_label: Time,
    pub out_label: Time,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSegment {
    /// Consecutive footprint vertices.
    pub vertices: Vec<VertexId>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: Vec<TemporalEdge>,
    /// Upper bound for labels of shortcuts leaving the first vertex.
    pub entry_max: Option<Time>,
    /// Lower bound for labels of shortcuts entering the last vertex.
    pub exit_min: Option<Time>,
}

impl PathSegment {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Static path `0 -> 1 -> ... -> len-1` over local indices.
    pub fn footprint(&self) -> StaticGraph {
        StaticGraph::from_edges(
            self.len(),
            (1..self.len()).map(|i| (VertexId::from_index(i - 1), VertexId::from_index(i))),
        )
    }

    /// Whether the shortcut over the whole segment can keep reachability.
    pub fn span_is_isolated(&self) -> bool {
        match (self.entry_max, self.exit_min) {
            (Some(hi), Some(lo)) => lo.max(self.edges[0].label) <= hi,
            _ => true,
        }
    }
}

/// Vertices of the footprint path in order.
pub fn footprint_path(g: &TemporalGraph) -> Result<Vec<VertexId>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::NotAPath("graph has no vertices".into()));
    }
    for w in g.edges().windows(2) {
        if (w[0].tail, w[0].head) == (w[1].tail, w[1].head) {
            return Err(Error::NotSimple(
                g.name(w[0].tail).to_string(),
                g.name(w[0].head).to_string(),
            ));
        }
    }
    if g.m() != n - 1 {
        return Err(Error::NotAPath(format!("{} vertices but {} edges", n, g.m())));
    }
    let mut next = vec![None; n];
    let mut indeg = vec![0usize; n];
    for e in g.edges() {
        if next[e.tail.index()].replace(e.head).is_some() {
            return Err(Error::NotAPath(format!("`{}` has out-degree above 1", g.name(e.tail))));
        }
        indeg[e.head.index()] += 1;
    }
    let starts: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let [start] = starts[..] else {
        return Err(Error::NotAPath(format!("{} vertices without predecessor", starts.len())));
    };
    let mut order = vec![VertexId::from_index(start)];
    while let Some(v) = next[order.last().unwrap().index()] {
        if order.len() == n {
            return Err(Error::NotAPath("footprint contains a cycle".into()));
        }
        order.push(v);
    }
    if order.len() != n {
        return Err(Error::NotAPath("footprint is disconnected".into()));
    }
    Ok(order)
}

fn path_edges(g: &TemporalGraph, order: &[VertexId]) -> Vec<TemporalEdge> {
    order
        .windows(2)
        .map(|w| *g.out_edges(w[0]).next().expect("path edge"))
        .collect()
}

fn is_break(mode: PathMode, in_label: Time, out_label: Time) -> bool {
    !mode.allows(in_label, out_label)
}

pub fn find_temporal_breaks(g: &TemporalGraph) -> Result<Vec<TemporalBreak>> {
    find_temporal_breaks_with_mode(g, PathMode::Strict)
}

/// Interior vertices where the path stops being a temporal path: out-label
/// `<=` in-label (strict) or `<` in-label (non-strict).
pub fn find_temporal_breaks_with_mode(g: &TemporalGraph, mode: PathMode) -> Result<Vec<TemporalBreak>> {
    let order = footprint_path(g)?;
    let edges = path_edges(g, &order);
    Ok(edges
        .windows(2)
        .filter(|w| is_break(mode, w[0].label, w[1].label))
        .map(|w| TemporalBreak {
            vertex: w[0].head,
            in_label: w[0].label,
            out_label: w[1].label,
        })
        .collect())
}

pub fn partition_at_breaks(g: &TemporalGraph) -> Result<Vec<PathSegment>> {
    partition_at_breaks_with_mode(g, PathMode::Strict)
}

/// Splits the path at its breaks; adjacent segments share the break vertex.
pub fn partition_at_breaks_with_mode(g: &TemporalGraph, mode: PathMode) -> Result<Vec<PathSegment>> {
    let order = footprint_path(g)?;
    let edges = path_edges(g, &order);
    let mut cuts = Vec::new(); // vertex positions of breaks
    for (i, w) in edges.windows(2).enumerate() {
        if is_break(mode, w[0].label, w[1].label) {
            cuts.push(i + 1);
        }
    }

    // Threshold per break, chosen right to left as small as possible while
    // staying at or above the next break's threshold (plus one when equal
    // labels chain). Arrivals at a break carry labels >= θ, departures
    // labels <= θ - gap, where gap makes the pair non-chainable.
    let gap = match mode {
        PathMode::Strict => 0,
        PathMode::NonStrict => 1,
    };
    let mut theta = vec![0; cuts.len()];
    let mut bound: Option<Time> = None;
    for (k, &x) in cuts.iter().enumerate().rev() {
        let (t_in, t_out) = (edges[x - 1].label, edges[x].label);
        let lo = (t_out + gap).max(bound.unwrap_or(0));
        theta[k] = lo.min(t_in);
        bound = Some(theta[k] + gap);
    }

    let mut bounds = vec![0];
    bounds.extend(cuts.iter().copied());
    bounds.push(order.len() - 1);
    Ok(bounds
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let (a, b) = (w[0], w[1]);
            PathSegment {
                vertices: order[a..=b].to_vec(),
                edges: edges[a..b].to_vec(),
                entry_max: (k > 0).then(|| theta[k - 1] - gap),
                exit_min: (k < cuts.len()).then(|| theta[k]),
            }
        })
        .collect())
}

/// Labels each forward shortcut `(i, j)` (local indices) with a label from
/// `[t_i, t_{j-1}]`: `t_i`, raised to the segment's exit bound when the
/// shortcut ends at the last vertex.
pub fn assign_labels(segment: &PathSegment, s: &ShortcutSet) -> Result<TemporalShortcutSet> {
    let last = segment.len() - 1;
    let mut out = Vec::with_capacity(s.len());
    for &(i, j) in &s.edges {
        let (i, j) = (i.index(), j.index());
        if i >= j || j > last {
            return Err(Error::NotForward(i, j));
        }
        let mut label = segment.edges[i].label;
        if j == last {
            if let Some(lo) = segment.exit_min {
                label = label.max(lo).min(segment.edges[j - 1].label);
            }
        }
        out.push(TemporalEdge::new(segment.vertices[i], segment.vertices[j], label));
    }
    Ok(TemporalShortcutSet::new(out, ShortcutOrigin::PathConstruction))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentOutcome {
    pub vertices: Vec<VertexId>,
    pub static_shortcuts: usize,
    /// Diameter of the segment footprint plus its static shortcuts.
    pub static_diameter: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathOutcome {
    pub shortcuts: TemporalShortcutSet,
    pub report: DiameterReport,
    pub segments: Vec<SegmentOutcome>,
}

/// Partitions at breaks, shortcuts every segment independently and merges
/// the labelled shortcuts in path order.
/// Replaces a shortcut over the whole segment by a two-hop detour through
/// an interior vertex when that keeps the static diameter within `d`; both
/// detour edges can be labelled without crossing the neighbouring breaks.
fn detour_span(footprint: &StaticGraph, s: ShortcutSet, d: u32) -> ShortcutSet {
    let last = footprint.n() - 1;
    let span = (VertexId(0), VertexId::from_index(last));
    if last < 2 || s.edges.binary_search(&span).is_err() {
        return s;
    }
    for m in 1..last {
        let mid = VertexId::from_index(m);
        let mut edges: Vec<_> = s.edges.iter().copied().filter(|&e| e != span).collect();
        edges.extend([(span.0, mid), (mid, span.1)].into_iter().filter(|&(a, b)| !footprint.has_edge(a, b)));
        edges.sort_unstable();
        edges.dedup();
        let candidate = ShortcutSet { edges, ..s.clone() };
        if static_diameter(&candidate.apply(footprint)).map_or(true, |k| k <= d) {
            return candidate;
        }
    }
    s
}

pub fn shortcut_temporal_path(g: &TemporalGraph, d: u32, method: Constructor) -> Result<PathOutcome> {
    method.check_target(d)?;
    let segments = partition_at_breaks(g)?;
    let mut edges = Vec::new();
    let mut outcomes = Vec::with_capacity(segments.len());
    for seg in &segments {
        let footprint = seg.footprint();
        let mut s = method.build(&footprint, d)?;
        if !seg.span_is_isolated() {
            s = detour_span(&footprint, s, d);
        }
        let labelled = assign_labels(seg, &s)?;
        outcomes.push(SegmentOutcome {
            vertices: seg.vertices.clone(),
            static_shortcuts: s.len(),
            static_diameter: static_diameter(&s.apply(&footprint)),
        });
        edges.extend(labelled.edges);
    }
    let shortcuts = TemporalShortcutSet::new(edges, ShortcutOrigin::PathConstruction);
    let augmented = g.with_edges(shortcuts.edges.iter().copied())?;
    let report = base_diameter(g, &augmented, PathMode::Strict)?;
    Ok(PathOutcome {
        shortcuts,
        report,
        segments: outcomes,
    })
}
