//! Temporal and static graph representations.
//!
//! Vertices are dense indices `0..n` backed by a name table. A
//! [`TemporalGraph`] is immutable once built: its edge list is kept sorted by
//! `(tail, head, label)` without duplicates, and every vertex carries an
//! outgoing adjacency sorted by label so that searches can skip straight to
//! the first usable departure.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A discrete time step. Traversing an edge always takes one step.
pub type Time = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A directed edge `(tail, head)` available only at time `label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub label: Time,
}

impl TemporalEdge {
    pub fn new(tail: VertexId, head: VertexId, label: Time) -> Self {
        TemporalEdge { tail, head, label }
    }

    /// Time at which the head is reached.
    #[inline]
    pub fn arrival(&self) -> Time {
        self.label + 1
    }
}

#[derive(Clone, Debug)]
pub struct TemporalGraph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<TemporalEdge>,
    // edge positions per tail, ordered by (label, head)
    out: Vec<Vec<usize>>,
}

/// Builds a temporal graph from `(tail, head, label)` triples.
///
/// Vertex names are assigned dense ids in order of first appearance and
/// duplicate triples collapse into one edge.
pub fn build_graph<I, S>(triples: I) -> Result<TemporalGraph>
where
    I: IntoIterator<Item = (S, S, i64)>,
    S: AsRef<str>,
{
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |name: &str, names: &mut Vec<String>| -> VertexId {
        if let Some(&id) = index.get(name) {
            return id;
        }
        let id = VertexId::from_index(names.len());
        names.push(name.to_string());
        index.insert(name.to_string(), id);
        id
    };
    for (tail, head, label) in triples {
        let (tail, head) = (tail.as_ref(), head.as_ref());
        if label < 0 {
            return Err(Error::InvalidLabel(label));
        }
        if tail == head {
            return Err(Error::SelfLoop(tail.to_string()));
        }
        let u = intern(tail, &mut names);
        let v = intern(head, &mut names);
        edges.push(TemporalEdge::new(u, v, label as Time));
    }
    TemporalGraph::from_edges(names, edges)
}

impl TemporalGraph {
    /// Builds a graph over an explicit vertex table. Vertices without edges
    /// are kept.
    pub fn from_edges(names: Vec<String>, mut edges: Vec<TemporalEdge>) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), VertexId::from_index(i)).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate vertex name `{name}`"),
                });
            }
        }
        for e in &edges {
            for v in [e.tail, e.head] {
                if v.index() >= n {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
            }
            if e.tail == e.head {
                return Err(Error::SelfLoop(names[e.tail.index()].clone()));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut out = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out[e.tail.index()].push(i);
        }
        for list in &mut out {
            list.sort_by_key(|&i| (edges[i].label, edges[i].head));
        }
        Ok(TemporalGraph {
            names,
            index,
            edges,
            out,
        })
    }

    pub fn empty() -> Self {
        TemporalGraph::from_edges(Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(VertexId::from_index)
    }

    /// Edges sorted by `(tail, head, label)`.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    /// Outgoing edges of `v` in ascending label order.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = &TemporalEdge> + '_ {
        self.out[v.index()].iter().map(move |&i| &self.edges[i])
    }

    /// Outgoing edges of `v` whose label is at least `from`.
    pub fn out_edges_from(&self, v: VertexId, from: Time) -> impl Iterator<Item = &TemporalEdge> + '_ {
        let list = &self.out[v.index()];
        let start = list.partition_point(|&i| self.edges[i].label < from);
        list[start..].iter().map(move |&i| &self.edges[i])
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.n()
    }

    pub fn contains_edge(&self, e: &TemporalEdge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Looks up an edge by vertex names.
    pub fn edge(&self, tail: &str, head: &str, label: Time) -> Option<TemporalEdge> {
        let e = TemporalEdge::new(self.vertex(tail)?, self.vertex(head)?, label);
        self.contains_edge(&e).then_some(e)
    }

    /// Same vertex table plus `extra` edges.
    pub fn with_edges<I>(&self, extra: I) -> Result<TemporalGraph>
    where
        I: IntoIterator<Item = TemporalEdge>,
    {
        let mut edges = self.edges.clone();
        edges.extend(extra);
        TemporalGraph::from_edges(self.names.clone(), edges)
    }

    /// Same vertex table, edges filtered by `keep`.
    pub fn filter_edges<F>(&self, mut keep: F) -> TemporalGraph
    where
        F: FnMut(&TemporalEdge) -> bool,
    {
        let edges = self.edges.iter().copied().filter(|e| keep(e)).collect();
        TemporalGraph::from_edges(self.names.clone(), edges).expect("subset of a valid graph")
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[VertexId]) -> TemporalGraph {
        let mut remap = vec![None; self.n()];
        for (i, v) in vertices.iter().enumerate() {
            remap[v.index()] = Some(VertexId::from_index(i));
        }
        let names = vertices.iter().map(|&v| self.name(v).to_string()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(TemporalEdge::new(
                    remap[e.tail.index()]?,
                    remap[e.head.index()]?,
                    e.label,
                ))
            })
            .collect();
        TemporalGraph::from_edges(names, edges).expect("induced subgraph is valid")
    }

    /// True when both graphs carry the same vertex names in the same order.
    pub fn same_vertex_set(&self, other: &TemporalGraph) -> bool {
        self.names == other.names
    }

    /// `(tail, head, label)` triples by name, sorted.
    pub fn named_edges(&self) -> Vec<(String, String, Time)> {
        let mut v: Vec<_> = self
            .edges
            .iter()
            .map(|e| (self.name(e.tail).to_string(), self.name(e.head).to_string(), e.label))
            .collect();
        v.sort();
        v
    }

    pub fn display_edge(&self, e: &TemporalEdge) -> String {
        format!("({},{},{})", self.name(e.tail), self.name(e.head), e.label)
    }

    /// Static graph with one edge per distinct `(tail, head)` pair.
    pub fn footprint(&self) -> StaticGraph {
        StaticGraph::from_edges(self.n(), self.edges.iter().map(|e| (e.tail, e.head)))
    }

    /// Static graph of the edges active exactly at time `t`.
    pub fn snapshot(&self, t: Time) -> StaticGraph {
        StaticGraph::from_edges(
            self.n(),
            self.edges
                .iter()
                .filter(|e| e.label == t)
                .map(|e| (e.tail, e.head)),
        )
    }

    pub fn stats(&self) -> Result<GraphStats> {
        let t_min = self.edges.iter().map(|e| e.label).min().ok_or(Error::NoEdges)?;
        let t_max = self.edges.iter().map(|e| e.label).max().ok_or(Error::NoEdges)?;
        Ok(GraphStats {
            n: self.n(),
            m: self.m(),
            t_min,
            t_max,
            lifetime: t_max - t_min + 1,
        })
    }
}

impl PartialEq for TemporalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for TemporalGraph {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub t_min: Time,
    pub t_max: Time,
    pub lifetime: Time,
}

impl GraphStats {
    /// The label range `[t_min, t_max]`.
    pub fn lifecycle(&self) -> std::ops::RangeInclusive<Time> {
        self.t_min..=self.t_max
    }
}

/// A plain directed graph over `0..n` with sorted, duplicate-free
/// adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StaticGraph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl StaticGraph {
    pub fn new(n: usize) -> Self {
        StaticGraph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(v.index() < n, "edge endpoint {v} outside 0..{n}");
            adj[u.index()].push(v);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        StaticGraph { adj, m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn out(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.index()]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.index()].binary_search(&v).is_ok()
    }

    /// Edges in lexicographic `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (VertexId::from_index(u), v)))
    }

    pub fn with_edges<I>(&self, extra: I) -> StaticGraph
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        StaticGraph::from_edges(self.n(), self.edges().chain(extra))
    }

    /// Inserts `(u, v)`; returns false if it was already present.
    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let list = &mut self.adj[u.index()];
        match list.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                list.insert(pos, v);
                self.m += 1;
                true
            }
        }
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for (_, v) in self.edges() {
            deg[v.index()] += 1;
        }
        deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(i: usize) -> VertexId {
        VertexId::from_index(i)
    }

    #[test]
    fn g1_counts() {
        let g = fixtures::g1();
        assert_eq!((g.n(), g.m()), (4, 3));
    }

    #[test]
    fn empty_edge_list() {
        let g = build_graph(Vec::<(&str, &str, i64)>::new()).unwrap();
        assert_eq!((g.n(), g.m()), (0, 0));
        assert_eq!(g.stats(), Err(Error::NoEdges));
        assert_eq!(g.footprint().m(), 0);
    }

    #[test]
    fn duplicates_collapse() {
        let triples = [("p1", "p2", 1), ("p2", "p3", 2), ("p3", "p4", 3)];
        let g = build_graph(triples.iter().chain(triples.iter()).copied()).unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn rejects_negative_label_and_self_loop() {
        assert_eq!(build_graph([("a", "b", -1)]).unwrap_err(), Error::InvalidLabel(-1));
        assert_eq!(
            build_graph([("a", "a", 2)]).unwrap_err(),
            Error::SelfLoop("a".into())
        );
    }

    #[test]
    fn names_follow_first_appearance() {
        let g = build_graph([("c", "a", 0), ("a", "b", 1)]).unwrap();
        assert_eq!(g.names(), ["c", "a", "b"]);
    }

    #[test]
    fn footprint_collapses_labels() {
        let g1 = fixtures::g1();
        let fp = g1.footprint();
        assert_eq!(fp.edges().collect::<Vec<_>>(), vec![(v(0), v(1)), (v(1), v(2)), (v(2), v(3))]);

        let g = build_graph([("a", "b", 1), ("a", "b", 5)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.footprint().edges().collect::<Vec<_>>(), vec![(v(0), v(1))]);
    }

    #[test]
    fn snapshots() {
        let g1 = fixtures::g1();
        assert_eq!(g1.snapshot(2).edges().collect::<Vec<_>>(), vec![(v(1), v(2))]);
        let empty = g1.snapshot(99);
        assert_eq!((empty.n(), empty.m()), (4, 0));

        let g2 = fixtures::g2();
        let s = g2.snapshot(1);
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(v(0), v(1)), (v(2), v(3))]);
    }

    #[test]
    fn stats_of_fixtures() {
        let s = fixtures::g1().stats().unwrap();
        assert_eq!((s.t_min, s.t_max, s.lifetime), (1, 3, 3));
        let s = fixtures::g4().stats().unwrap();
        assert_eq!((s.t_min, s.t_max, s.lifetime), (6, 7, 2));
        let s = build_graph([("a", "b", 5)]).unwrap().stats().unwrap();
        assert_eq!(s.lifetime, 1);
        assert_eq!(s.lifecycle(), 5..=5);
    }

    #[test]
    fn out_edges_sorted_by_label() {
        let g = build_graph([("a", "b", 5), ("a", "c", 1), ("a", "b", 3)]).unwrap();
        let labels: Vec<_> = g.out_edges(v(0)).map(|e| e.label).collect();
        assert_eq!(labels, vec![1, 3, 5]);
        let later: Vec<_> = g.out_edges_from(v(0), 3).map(|e| e.label).collect();
        assert_eq!(later, vec![3, 5]);
    }
}
