//! Candidate temporal closures and the reachability they add.
//!
//! Each closure adds, for every strictly reachable pair `(u, v)`, direct
//! edges `u -> v`. Because a direct edge can be followed or preceded by
//! edges the original paths could not combine with, all of them may
//! create new reachable pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph, VertexId};
use crate::reach::{reach_matrix, shortest_temporal_path, time_metrics, PathMode, TimeMetric, TimeValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosureKind {
    /// Every label of the lifecycle.
    FullLifecycle,
    /// The earliest arrival time.
    EarliestArrival,
    /// The latest departure label.
    LatestDeparture,
}

/// `g` plus direct edges for its strictly reachable pairs.
pub fn temporal_closure(g: &TemporalGraph, kind: ClosureKind) -> Result<TemporalGraph> {
    let stats = g.stats()?;
    let mut extra = Vec::new();
    match kind {
        ClosureKind::FullLifecycle => {
            let r = reach_matrix(g, PathMode::Strict);
            for (u, v) in r.proper_pairs() {
                extra.extend(stats.lifecycle().map(|t| TemporalEdge::new(u, v, t)));
            }
        }
        ClosureKind::EarliestArrival => {
            for u in g.vertices() {
                for (i, t) in time_metrics(g, u, TimeMetric::EarliestArrival)?.into_iter().enumerate() {
                    if let TimeValue::At(t) = t {
                        extra.push(TemporalEdge::new(u, VertexId::from_index(i), t));
                    }
                }
            }
        }
        ClosureKind::LatestDeparture => {
            for v in g.vertices() {
                for (i, t) in time_metrics(g, v, TimeMetric::LatestDeparture)?.into_iter().enumerate() {
                    if let TimeValue::At(t) = t {
                        extra.push(TemporalEdge::new(VertexId::from_index(i), v, t));
                    }
                }
            }
        }
    }
    g.with_edges(extra)
}

/// Pairs reachable after augmentation but not before, each with a
/// minimum-hop strict witness path in the augmented graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReachabilityDelta {
    pub added_pairs: Vec<(VertexId, VertexId)>,
    pub witness_paths: Vec<Vec<TemporalEdge>>,
}

impl ReachabilityDelta {
    pub fn is_empty(&self) -> bool {
        self.added_pairs.is_empty()
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.added_pairs.binary_search(&(u, v)).is_ok()
    }
}

pub fn reachability_delta(before: &TemporalGraph, after: &TemporalGraph) -> Result<ReachabilityDelta> {
    if !before.same_vertex_set(after) {
        return Err(Error::VertexSetMismatch);
    }
    if !before.edges().iter().all(|e| after.contains_edge(e)) {
        return Err(Error::NotAugmentation);
    }
    let (r0, r1) = (reach_matrix(before, PathMode::Strict), reach_matrix(after, PathMode::Strict));
    let mut delta = ReachabilityDelta::default();
    for (u, v) in r1.proper_pairs().filter(|&(u, v)| !r0.get(u, v)) {
        let path = shortest_temporal_path(after, u, v, PathMode::Strict)?.expect("pair is reachable");
        delta.added_pairs.push((u, v));
        delta.witness_paths.push(path);
    }
    Ok(delta)
}
