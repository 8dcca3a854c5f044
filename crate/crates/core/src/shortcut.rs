//! Static shortcut sets: randomized sampling, the greedy path-splitting
//! construction, and verification.
//!
//! A shortcut set for a static graph `G` is a set of edges taken from the
//! transitive closure of `G` (and not already in `G`) that brings the
//! diameter of `G` plus the shortcuts down to a target `d`.

use std::collections::VecDeque;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{StaticGraph, TemporalEdge, VertexId};
use crate::static_algos::{
    static_diameter, static_diameter_with_reach, transitive_closure, transitive_reduction,
    ClosureGraph,
};

/// Default sampling multiplier for [`random_shortcut_set`].
pub const DEFAULT_MULTIPLIER: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Random,
    Greedy,
    Manual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutSet {
    /// Sorted, duplicate-free.
    pub edges: Vec<(VertexId, VertexId)>,
    pub method: Method,
    pub seed: Option<u64>,
}

impl ShortcutSet {
    pub fn manual<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        ShortcutSet {
            edges,
            method: Method::Manual,
            seed: None,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `host` with every shortcut added.
    pub fn apply(&self, host: &StaticGraph) -> StaticGraph {
        host.with_edges(self.edges.iter().copied())
    }
}

/// Which static construction to run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Constructor {
    Random { seed: u64, multiplier: f64 },
    Greedy,
}

impl Constructor {
    /// Runs the construction, or returns an empty set when `g` already has
    /// diameter at most `d`.
    pub fn build(&self, g: &StaticGraph, d: u32) -> Result<ShortcutSet> {
        self.check_target(d)?;
        if static_diameter(g).map_or(true, |k| k <= d) {
            let (method, seed) = match *self {
                Constructor::Random { seed, .. } => (Method::Random, Some(seed)),
                Constructor::Greedy => (Method::Greedy, None),
            };
            return Ok(ShortcutSet {
                edges: Vec::new(),
                method,
                seed,
            });
        }
        match *self {
            Constructor::Random { seed, multiplier } => random_shortcut_set(g, d, seed, multiplier),
            Constructor::Greedy => greedy_shortcut_set(g, d),
        }
    }

    /// Rejects targets the construction cannot work with.
    pub fn check_target(&self, d: u32) -> Result<()> {
        match self {
            Constructor::Random { .. } if d < 1 => Err(Error::InvalidTarget(d)),
            Constructor::Greedy if d < 4 => Err(Error::TargetTooSmall(d, 4)),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShortcutOrigin {
    PathConstruction,
    ExpansionTranslation,
    Manual,
}

/// Temporal edges to add to a host temporal graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalShortcutSet {
    /// Sorted, duplicate-free, disjoint from the host's edges.
    pub edges: Vec<TemporalEdge>,
    pub origin: ShortcutOrigin,
}

impl TemporalShortcutSet {
    pub fn new(mut edges: Vec<TemporalEdge>, origin: ShortcutOrigin) -> Self {
        edges.sort_unstable();
        edges.dedup();
        TemporalShortcutSet { edges, origin }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Number of vertices sampled: `min(n, ceil(c * n * ln(max(n, 2)) / d))`.
pub fn sample_count(n: usize, d: u32, multiplier: f64) -> usize {
    let ln = (n.max(2) as f64).ln();
    let raw = (multiplier * n as f64 * ln / d as f64).ceil();
    if raw >= n as f64 {
        n
    } else {
        raw.max(0.0) as usize
    }
}

/// Samples vertices uniformly and adds the transitive closure among them.
pub fn random_shortcut_set(g: &StaticGraph, d: u32, seed: u64, multiplier: f64) -> Result<ShortcutSet> {
    if d < 1 {
        return Err(Error::InvalidTarget(d));
    }
    let n = g.n();
    let count = sample_count(n, d, multiplier);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = vec![false; n];
    let mut order: Vec<usize> = index::sample(&mut rng, n, count).into_vec();
    order.sort_unstable();
    for &u in &order {
        sampled[u] = true;
    }

    let mut edges = Vec::new();
    let mut mark = vec![usize::MAX; n];
    let mut stack = Vec::new();
    for &u in &order {
        let src = VertexId::from_index(u);
        mark[u] = u;
        stack.push(src);
        while let Some(x) = stack.pop() {
            for &v in g.out(x) {
                if mark[v.index()] != u {
                    mark[v.index()] = u;
                    stack.push(v);
                    if sampled[v.index()] && !g.has_edge(src, v) {
                        edges.push((src, v));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(ShortcutSet {
        edges,
        method: Method::Random,
        seed: Some(seed),
    })
}

/// BFS distances from `src` with each vertex's parent fixed to its
/// lowest-index predecessor on some shortest path.
fn bfs_with_parents(h: &StaticGraph, src: VertexId) -> (Vec<Option<u32>>, Vec<Option<VertexId>>) {
    let n = h.n();
    let mut dist = vec![None; n];
    let mut order = vec![src];
    dist[src.index()] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u.index()].unwrap() + 1;
        for &v in h.out(u) {
            if dist[v.index()].is_none() {
                dist[v.index()] = Some(d);
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    for &u in &order {
        let du = dist[u.index()].unwrap();
        for &v in h.out(u) {
            if dist[v.index()] == Some(du + 1) {
                let p = &mut parent[v.index()];
                if p.map_or(true, |p| u < p) {
                    *p = Some(u);
                }
            }
        }
    }
    (dist, parent)
}

/// Repeatedly splits the first over-long shortest path.
///
/// Starts from the transitive reduction `H` of `g`. While some pair `(u, v)`
/// (scanned in lexicographic index order) has `dist_H(u, v) > d`, take the
/// shortest path `v_1 = u, ..., v_t = v` and add the shortcut
/// `(v_{floor(d/4)}, v_{t - floor(d/4)})` (1-indexed) to `H`. Shortcuts that
/// already exist in `g` are used during the search but not reported.
pub fn greedy_shortcut_set(g: &StaticGraph, d: u32) -> Result<ShortcutSet> {
    if d < 4 {
        return Err(Error::TargetTooSmall(d, 4));
    }
    let mut h = transitive_reduction(g)?;
    let quarter = (d / 4) as usize;
    let mut edges = Vec::new();
    for u in 0..h.n() {
        let src = VertexId::from_index(u);
        loop {
            let (dist, parent) = bfs_with_parents(&h, src);
            let Some(far) = dist.iter().position(|x| matches!(x, Some(x) if *x > d)) else {
                break;
            };
            let mut path = vec![VertexId::from_index(far)];
            while let Some(p) = parent[path.last().unwrap().index()] {
                path.push(p);
            }
            path.reverse();
            let t = path.len();
            let (a, b) = (path[quarter - 1], path[t - quarter - 1]);
            h.insert_edge(a, b);
            if !g.has_edge(a, b) {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(ShortcutSet {
        edges,
        method: Method::Greedy,
        seed: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub diameter_achieved: Option<u32>,
    /// Shortcuts that are not closure edges of the host.
    pub violations: Vec<(VertexId, VertexId)>,
}

pub fn verify_shortcut_set(g: &StaticGraph, s: &ShortcutSet, d: u32) -> Verdict {
    verify_against_closure(&transitive_closure(g), s, d)
}

/// As [`verify_shortcut_set`] with the host closure precomputed.
pub fn verify_against_closure(closure: &ClosureGraph, s: &ShortcutSet, d: u32) -> Verdict {
    let violations: Vec<_> = s
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| !closure.contains(u, v))
        .collect();
    let augmented = s.apply(&closure.base);
    let diameter_achieved = if violations.is_empty() {
        static_diameter_with_reach(&augmented, &closure.reach_counts())
    } else {
        static_diameter(&augmented)
    };
    Verdict {
        ok: violations.is_empty() && diameter_achieved.map_or(true, |k| k <= d),
        diameter_achieved,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId::from_index(i)
    }

    fn path(n: usize) -> StaticGraph {
        StaticGraph::from_edges(n, (0..n - 1).map(|i| (v(i), v(i + 1))))
    }

    #[test]
    fn sample_count_formula() {
        // 2 * 64 * ln 64 / 8 = 66.5 -> saturates at n
        assert_eq!(sample_count(64, 8, 2.0), 64);
        // 2 * 64 * ln 64 / 16 = 33.27 -> 34
        assert_eq!(sample_count(64, 16, 2.0), 34);
        assert_eq!(sample_count(1, 1, 2.0), 1);
    }

    #[test]
    fn saturated_random_equals_closure_minus_edges() {
        let p = path(4);
        let s = random_shortcut_set(&p, 1, 7, 100.0).unwrap();
        assert_eq!(s.edges, vec![(v(0), v(2)), (v(0), v(3)), (v(1), v(3))]);
        let verdict = verify_shortcut_set(&p, &s, 1);
        assert!(verdict.ok);
        assert_eq!(verdict.diameter_achieved, Some(1));
    }

    #[test]
    fn random_is_deterministic() {
        let g = StaticGraph::from_edges(
            30,
            (0..29).map(|i| (v(i), v(i + 1))).chain([(v(3), v(17)), (v(5), v(9))]),
        );
        let a = random_shortcut_set(&g, 10, 42, 0.5).unwrap();
        let b = random_shortcut_set(&g, 10, 42, 0.5).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        let c = transitive_closure(&g);
        assert!(a.edges.iter().all(|&(x, y)| c.contains(x, y) && !g.has_edge(x, y)));
    }

    #[test]
    fn random_rejects_zero_target() {
        assert_eq!(random_shortcut_set(&path(3), 0, 1, 2.0).unwrap_err(), Error::InvalidTarget(0));
    }

    #[test]
    fn greedy_on_seven_vertex_path() {
        let p = path(7);
        let s = greedy_shortcut_set(&p, 4).unwrap();
        // first violating pair (v1, v6): shortcut (v1, v5); then (v2, v7): (v2, v6)
        assert_eq!(s.edges, vec![(v(0), v(4)), (v(1), v(5))]);
        let verdict = verify_shortcut_set(&p, &s, 4);
        assert!(verdict.ok);
        assert_eq!(verdict.diameter_achieved, Some(4));
    }

    #[test]
    fn greedy_noop_within_target() {
        assert!(greedy_shortcut_set(&path(5), 4).unwrap().is_empty());
        assert!(greedy_shortcut_set(&path(3), 9).unwrap().is_empty());
    }

    #[test]
    fn greedy_preconditions() {
        assert_eq!(greedy_shortcut_set(&path(5), 3).unwrap_err(), Error::TargetTooSmall(3, 4));
        let cyc = StaticGraph::from_edges(2, [(v(0), v(1)), (v(1), v(0))]);
        assert_eq!(greedy_shortcut_set(&cyc, 4).unwrap_err(), Error::CyclicInput);
    }

    #[test]
    fn greedy_skips_edges_already_in_host() {
        // reduction drops (0, 5); greedy may want it back but it is not new
        let g = path(9).with_edges([(v(0), v(5))]);
        let s = greedy_shortcut_set(&g, 4).unwrap();
        assert!(s.edges.iter().all(|&(a, b)| !g.has_edge(a, b)));
        assert!(verify_shortcut_set(&g, &s, 4).ok);
    }

    #[test]
    fn verify_cases() {
        let p = path(4);
        let v1 = verify_shortcut_set(&p, &ShortcutSet::manual([(v(0), v(2))]), 2);
        assert!(v1.ok);
        assert_eq!(v1.diameter_achieved, Some(2));

        let back = verify_shortcut_set(&p, &ShortcutSet::manual([(v(2), v(0))]), 10);
        assert!(!back.ok);
        assert_eq!(back.violations, vec![(v(2), v(0))]);

        let id = verify_shortcut_set(&p, &ShortcutSet::manual([]), 3);
        assert!(id.ok);
        assert!(!verify_shortcut_set(&p, &ShortcutSet::manual([]), 2).ok);
    }
}
