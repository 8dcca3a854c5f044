//! Classical routines on static digraphs: BFS distances, diameter,
//! transitive closure and (DAG) transitive reduction.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{StaticGraph, VertexId};
use crate::reach::DistanceMap;

pub fn static_distances(g: &StaticGraph, src: VertexId) -> Result<DistanceMap> {
    if src.index() >= g.n() {
        return Err(Error::UnknownVertex(src.to_string()));
    }
    Ok(DistanceMap {
        source: src,
        hops: bfs(g, src),
    })
}

fn bfs(g: &StaticGraph, src: VertexId) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    dist[src.index()] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u.index()].unwrap() + 1;
        for &v in g.out(u) {
            if dist[v.index()].is_none() {
                dist[v.index()] = Some(d);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// A shortest path from `src` to `dst` as a vertex sequence.
pub fn static_shortest_path(g: &StaticGraph, src: VertexId, dst: VertexId) -> Option<Vec<VertexId>> {
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[src.index()] = true;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        if u == dst {
            let mut path = vec![dst];
            while let Some(p) = parent[path.last().unwrap().index()] {
                path.push(p);
            }
            path.reverse();
            return Some(path);
        }
        for &v in g.out(u) {
            if !seen[v.index()] {
                seen[v.index()] = true;
                parent[v.index()] = Some(u);
                queue.push_back(v);
            }
        }
    }
    None
}

/// BFS eccentricity of `src`, stopping as soon as `reachable` vertices
/// (source included) have been labelled.
fn bounded_eccentricity(g: &StaticGraph, src: VertexId, reachable: usize, dist: &mut [u32]) -> u32 {
    const UNSEEN: u32 = u32::MAX;
    let mut touched = vec![src];
    dist[src.index()] = 0;
    let mut seen = 1;
    let mut ecc = 0;
    let mut head = 0;
    'outer: while head < touched.len() && seen < reachable {
        let u = touched[head];
        head += 1;
        let d = dist[u.index()] + 1;
        for &v in g.out(u) {
            if dist[v.index()] == UNSEEN {
                dist[v.index()] = d;
                touched.push(v);
                ecc = d;
                seen += 1;
                if seen == reachable {
                    break 'outer;
                }
            }
        }
    }
    for v in touched {
        dist[v.index()] = UNSEEN;
    }
    ecc
}

/// Largest distance over ordered reachable pairs `u != v`.
pub fn static_diameter(g: &StaticGraph) -> Option<u32> {
    (0..g.n())
        .filter_map(|u| {
            bfs(g, VertexId::from_index(u))
                .into_iter()
                .flatten()
                .max()
                .filter(|&d| d > 0)
        })
        .max()
}

/// Diameter of `g` when the number of vertices each source reaches (itself
/// included) is already known, e.g. from the closure of a subgraph with the
/// same reachability. Each BFS stops once all of them are labelled.
pub fn static_diameter_with_reach(g: &StaticGraph, reach: &[usize]) -> Option<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    (0..g.n())
        .filter(|&u| reach[u] > 1)
        .map(|u| bounded_eccentricity(g, VertexId::from_index(u), reach[u], &mut dist))
        .max()
}

/// A static graph together with the edges of its transitive closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureGraph {
    pub base: StaticGraph,
    /// `(u, v)` with `u != v` and `v` reachable from `u`, sorted.
    pub closure_edges: Vec<(VertexId, VertexId)>,
}

impl ClosureGraph {
    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.closure_edges.binary_search(&(u, v)).is_ok()
    }

    /// Number of vertices each vertex reaches, itself included.
    pub fn reach_counts(&self) -> Vec<usize> {
        let mut counts = vec![1; self.base.n()];
        for (u, _) in &self.closure_edges {
            counts[u.index()] += 1;
        }
        counts
    }

    pub fn as_graph(&self) -> StaticGraph {
        StaticGraph::from_edges(self.base.n(), self.closure_edges.iter().copied())
    }
}

/// Reachable set of each vertex by per-source BFS.
pub fn transitive_closure(g: &StaticGraph) -> ClosureGraph {
    let n = g.n();
    let mut closure_edges = Vec::new();
    let mut mark = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for u in 0..n {
        mark[u] = u;
        stack.push(VertexId::from_index(u));
        let start = closure_edges.len();
        while let Some(x) = stack.pop() {
            for &v in g.out(x) {
                if mark[v.index()] != u {
                    mark[v.index()] = u;
                    closure_edges.push((VertexId::from_index(u), v));
                    stack.push(v);
                }
            }
        }
        closure_edges[start..].sort_unstable();
    }
    ClosureGraph {
        base: g.clone(),
        closure_edges,
    }
}

/// Kahn's algorithm; `CyclicInput` when no topological order exists.
pub fn topological_order(g: &StaticGraph) -> Result<Vec<VertexId>> {
    let mut indeg = g.in_degrees();
    let mut order: Vec<VertexId> = (0..g.n())
        .filter(|&v| indeg[v] == 0)
        .map(VertexId::from_index)
        .collect();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.out(u) {
            indeg[v.index()] -= 1;
            if indeg[v.index()] == 0 {
                order.push(v);
            }
        }
    }
    if order.len() == g.n() {
        Ok(order)
    } else {
        Err(Error::CyclicInput)
    }
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Minimal edge subset with the same reachability. Only defined for DAGs,
/// where it is unique.
pub fn transitive_reduction(g: &StaticGraph) -> Result<StaticGraph> {
    let order = topological_order(g)?;
    let n = g.n();
    let mut rank = vec![0; n];
    for (i, v) in order.iter().enumerate() {
        rank[v.index()] = i;
    }
    // descendants (inclusive) in reverse topological order
    let mut desc: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    let mut kept = Vec::new();
    for &u in order.iter().rev() {
        let mut succ: Vec<VertexId> = g.out(u).to_vec();
        succ.sort_by_key(|v| rank[v.index()]);
        let mut reach = BitSet::new(n);
        reach.insert(u.index());
        for v in succ {
            if !reach.contains(v.index()) {
                kept.push((u, v));
                reach.union_with(&desc[v.index()]);
            }
        }
        desc[u.index()] = reach;
    }
    Ok(StaticGraph::from_edges(n, kept))
}
