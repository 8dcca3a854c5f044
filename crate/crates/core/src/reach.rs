//! Temporal reachability, hop distances and diameters.
//!
//! Distances are hop counts of temporal paths. The search runs breadth-first
//! over states `(vertex, earliest label usable next)`: an edge `(u, v, t)`
//! can follow a state at `u` iff `t` is at least the state's usable label.
//! A state is discarded when the same vertex was already reached in no more
//! hops with an earlier-or-equal usable label.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph, Time, VertexId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathMode {
    /// Labels strictly increase along the path.
    #[default]
    Strict,
    /// Labels never decrease along the path.
    NonStrict,
}

impl PathMode {
    /// Earliest label that may follow an edge labelled `label`.
    #[inline]
    pub fn next_usable(self, label: Time) -> Time {
        match self {
            PathMode::Strict => label + 1,
            PathMode::NonStrict => label,
        }
    }

    /// Whether `next` may directly follow `prev` on a path.
    #[inline]
    pub fn allows(self, prev: Time, next: Time) -> bool {
        next >= self.next_usable(prev)
    }
}

/// Hop distances from a single source; `None` means unreachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMap {
    pub source: VertexId,
    pub hops: Vec<Option<u32>>,
}

impl DistanceMap {
    pub fn get(&self, v: VertexId) -> Option<u32> {
        self.hops[v.index()]
    }

    /// Reachable vertices other than the source, with their distance.
    pub fn reached(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        let src = self.source;
        self.hops
            .iter()
            .enumerate()
            .filter_map(move |(i, h)| Some((VertexId::from_index(i), (*h)?)))
            .filter(move |(v, _)| *v != src)
    }

    pub fn eccentricity(&self) -> Option<u32> {
        self.reached().map(|(_, h)| h).max()
    }
}

struct Search {
    hops: Vec<Option<u32>>,
    // state that first reached each vertex
    first: Vec<Option<usize>>,
    // (edge, parent state)
    states: Vec<(TemporalEdge, Option<usize>)>,
}

fn search(g: &TemporalGraph, src: VertexId, mode: PathMode, track: bool) -> Search {
    let n = g.n();
    let mut best = vec![Time::MAX; n];
    let mut hops = vec![None; n];
    let mut first = vec![None; n];
    let mut states = Vec::new();
    best[src.index()] = 0;
    hops[src.index()] = Some(0);

    // (vertex, usable-from label, state id)
    let mut frontier: Vec<(VertexId, Time, Option<usize>)> = vec![(src, 0, None)];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        // Drop states beaten within this layer; later layers must not prune
        // it, since fewer hops with a later label is not dominated.
        frontier.retain(|(v, from, _)| best[v.index()] == *from);
        let mut next = Vec::new();
        for (v, from, state) in frontier {
            for e in g.out_edges_from(v, from) {
                let usable = mode.next_usable(e.label);
                let w = e.head.index();
                if usable >= best[w] {
                    continue;
                }
                best[w] = usable;
                let id = if track {
                    states.push((*e, state));
                    Some(states.len() - 1)
                } else {
                    None
                };
                if hops[w].is_none() {
                    hops[w] = Some(depth);
                    first[w] = id;
                }
                next.push((e.head, usable, id));
            }
        }
        frontier = next;
    }
    Search { hops, first, states }
}

fn check_vertex(g: &TemporalGraph, v: VertexId) -> Result<()> {
    if g.contains_vertex(v) {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v.to_string()))
    }
}

/// Minimum hop count of a mode-valid temporal path from `src` to every vertex.
pub fn temporal_distances(g: &TemporalGraph, src: VertexId, mode: PathMode) -> Result<DistanceMap> {
    check_vertex(g, src)?;
    Ok(DistanceMap {
        source: src,
        hops: search(g, src, mode, false).hops,
    })
}

/// A minimum-hop temporal path from `src` to `dst`, if any. The empty path is
/// returned for `src == dst`.
pub fn shortest_temporal_path(
    g: &TemporalGraph,
    src: VertexId,
    dst: VertexId,
    mode: PathMode,
) -> Result<Option<Vec<TemporalEdge>>> {
    check_vertex(g, src)?;
    check_vertex(g, dst)?;
    if src == dst {
        return Ok(Some(Vec::new()));
    }
    let s = search(g, src, mode, true);
    let Some(mut state) = s.first[dst.index()] else {
        return Ok(None);
    };
    let mut path = Vec::new();
    loop {
        let (e, parent) = s.states[state];
        path.push(e);
        match parent {
            Some(p) => state = p,
            None => break,
        }
    }
    path.reverse();
    Ok(Some(path))
}

/// Whether consecutive edges connect and their labels respect `mode`.
pub fn is_valid_path(edges: &[TemporalEdge], mode: PathMode) -> bool {
    edges
        .windows(2)
        .all(|w| w[0].head == w[1].tail && mode.allows(w[0].label, w[1].label))
}

pub fn all_distances(g: &TemporalGraph, mode: PathMode) -> Vec<DistanceMap> {
    g.vertices()
        .map(|v| DistanceMap {
            source: v,
            hops: search(g, v, mode, false).hops,
        })
        .collect()
}

/// Dense reachability relation; `(v, v)` is always reachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl ReachMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> bool {
        self.bits[u.index() * self.n + v.index()]
    }

    /// Reachable ordered pairs, including the reflexive ones.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n)
                .filter(move |&v| self.bits[u * self.n + v])
                .map(move |v| (VertexId::from_index(u), VertexId::from_index(v)))
        })
    }

    /// Reachable pairs with distinct endpoints.
    pub fn proper_pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.pairs().filter(|(u, v)| u != v)
    }

    pub fn is_subset_of(&self, other: &ReachMatrix) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }
}

pub fn reach_matrix(g: &TemporalGraph, mode: PathMode) -> ReachMatrix {
    let n = g.n();
    let mut bits = vec![false; n * n];
    for d in all_distances(g, mode) {
        let row = d.source.index() * n;
        for (i, h) in d.hops.iter().enumerate() {
            bits[row + i] = h.is_some();
        }
    }
    ReachMatrix { n, bits }
}

/// Largest hop distance over reachable ordered pairs `u != v`.
pub fn temporal_diameter(g: &TemporalGraph, mode: PathMode) -> Option<u32> {
    all_distances(g, mode)
        .iter()
        .filter_map(DistanceMap::eccentricity)
        .max()
}

/// Distances in an augmented graph, restricted to the pairs already reachable
/// in its base graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    /// Diameter of the augmented graph over all its reachable pairs.
    pub diameter: Option<u32>,
    /// Reachable ordered pairs `u != v` in the augmented graph.
    pub reachable_pairs: usize,
    /// Largest augmented distance over pairs reachable in the base graph.
    pub base_diameter: Option<u32>,
    /// Pairs reachable in the augmented graph only.
    pub new_pairs: Vec<(VertexId, VertexId)>,
}

pub fn base_diameter(
    base: &TemporalGraph,
    augmented: &TemporalGraph,
    mode: PathMode,
) -> Result<DiameterReport> {
    if !base.same_vertex_set(augmented) {
        return Err(Error::VertexSetMismatch);
    }
    if !base.edges().iter().all(|e| augmented.contains_edge(e)) {
        return Err(Error::NotAugmentation);
    }
    let before = all_distances(base, mode);
    let after = all_distances(augmented, mode);
    let mut report = DiameterReport {
        diameter: None,
        reachable_pairs: 0,
        base_diameter: None,
        new_pairs: Vec::new(),
    };
    for (b, a) in before.iter().zip(&after) {
        for (v, h) in a.reached() {
            report.reachable_pairs += 1;
            report.diameter = report.diameter.max(Some(h));
            if b.get(v).is_some() {
                report.base_diameter = report.base_diameter.max(Some(h));
            } else {
                report.new_pairs.push((a.source, v));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeValue {
    /// The query vertex itself.
    Source,
    At(Time),
    Unreachable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeMetric {
    /// Earliest arrival at every vertex when starting from the query vertex.
    EarliestArrival,
    /// Latest departure from every vertex that still reaches the query vertex.
    LatestDeparture,
}

/// Earliest-arrival or latest-departure times over strict temporal paths.
///
/// Arrival is the last label plus one; departure is the first label.
pub fn time_metrics(g: &TemporalGraph, v: VertexId, kind: TimeMetric) -> Result<Vec<TimeValue>> {
    check_vertex(g, v)?;
    let mut order: Vec<&TemporalEdge> = g.edges().iter().collect();
    order.sort_by_key(|e| e.label);
    let times: Vec<Option<Time>> = match kind {
        TimeMetric::EarliestArrival => {
            let mut eat = vec![None; g.n()];
            eat[v.index()] = Some(0);
            for e in order {
                if matches!(eat[e.tail.index()], Some(t) if t <= e.label) {
                    let h = &mut eat[e.head.index()];
                    *h = Some(h.map_or(e.arrival(), |t: Time| t.min(e.arrival())));
                }
            }
            eat
        }
        TimeMetric::LatestDeparture => {
            let mut ldt = vec![None; g.n()];
            ldt[v.index()] = Some(Time::MAX);
            for e in order.into_iter().rev() {
                if matches!(ldt[e.head.index()], Some(t) if e.label < t) {
                    let t = &mut ldt[e.tail.index()];
                    *t = Some(t.map_or(e.label, |t: Time| t.max(e.label)));
                }
            }
            ldt
        }
    };
    Ok(times
        .into_iter()
        .enumerate()
        .map(|(i, t)| match t {
            _ if i == v.index() => TimeValue::Source,
            Some(t) => TimeValue::At(t),
            None => TimeValue::Unreachable,
        })
        .collect())
}
