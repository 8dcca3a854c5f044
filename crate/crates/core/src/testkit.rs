//! Brute-force oracles and seeded instance generators.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph, Time, VertexId};
use crate::reach::{all_distances, reach_matrix, PathMode, ReachMatrix};
use crate::shortcut::{ShortcutOrigin, TemporalShortcutSet};

/// All mode-valid simple temporal paths from `u` to `v` with at most
/// `max_hops` edges, in depth-first order. `u == v` yields only the empty path.
pub fn enumerate_strict_paths(
    g: &TemporalGraph,
    u: VertexId,
    v: VertexId,
    max_hops: usize,
    mode: PathMode,
) -> Vec<Vec<TemporalEdge>> {
    if u == v {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    on_path[u.index()] = true;
    let mut path = Vec::new();
    extend(g, u, v, None, max_hops, mode, &mut on_path, &mut path, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &TemporalGraph,
    at: VertexId,
    target: VertexId,
    last: Option<Time>,
    budget: usize,
    mode: PathMode,
    on_path: &mut [bool],
    path: &mut Vec<TemporalEdge>,
    out: &mut Vec<Vec<TemporalEdge>>,
) {
    if budget == 0 {
        return;
    }
    for e in g.out_edges(at) {
        if on_path[e.head.index()] || last.is_some_and(|t| !mode.allows(t, e.label)) {
            continue;
        }
        path.push(*e);
        if e.head == target {
            out.push(path.clone());
        } else {
            on_path[e.head.index()] = true;
            extend(g, e.head, target, Some(e.label), budget - 1, mode, on_path, path, out);
            on_path[e.head.index()] = false;
        }
        path.pop();
    }
}

/// Most candidate sets [`brute_min_tdss`] will examine.
pub const SEARCH_LIMIT: u128 = 10_000_000;

/// Base-diameter test against a fixed base graph.
struct Checker<'a> {
    g: &'a TemporalGraph,
    base: ReachMatrix,
    d: u32,
}

impl Checker<'_> {
    /// First base pair whose distance in `g + extra` exceeds `d`.
    fn violation(&self, extra: &[TemporalEdge]) -> Option<(VertexId, VertexId)> {
        let aug = self.g.with_edges(extra.iter().copied()).expect("candidates are well-formed");
        for dist in all_distances(&aug, PathMode::Strict) {
            let u = dist.source;
            for v in self.g.vertices() {
                if u != v && self.base.get(u, v) && dist.get(v).is_some_and(|h| h > self.d) {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Minimum number of temporal edges with labels in `labels` whose addition
/// brings the base diameter of `g` to at most `d`, with a witness.
///
/// Candidates are every absent `(u, v, t)` with `u != v`. Sets are tried by
/// increasing size. For `d = 1` the search branches on the first pair that
/// is still too far, since only a direct edge can fix it; otherwise each
/// size is enumerated in lexicographic order. Either way the first hit is a
/// minimum and ties go to the lexicographically smallest set.
pub fn brute_min_tdss(
    g: &TemporalGraph,
    d: u32,
    labels: RangeInclusive<Time>,
) -> Result<(usize, TemporalShortcutSet)> {
    if d == 0 {
        return Err(Error::InvalidTarget(d));
    }
    let candidates: Vec<TemporalEdge> = g
        .vertices()
        .flat_map(|u| g.vertices().map(move |v| (u, v)))
        .filter(|(u, v)| u != v)
        .flat_map(|(u, v)| labels.clone().map(move |t| TemporalEdge::new(u, v, t)))
        .filter(|e| !g.contains_edge(e))
        .collect();
    let checker = Checker {
        g,
        base: reach_matrix(g, PathMode::Strict),
        d,
    };
    let found = |set: Vec<TemporalEdge>| {
        let k = set.len();
        (k, TemporalShortcutSet::new(set, ShortcutOrigin::Manual))
    };
    if checker.violation(&[]).is_none() {
        return Ok(found(Vec::new()));
    }
    if d == 1 {
        let mut visited = 0u128;
        for bound in 1..=candidates.len() {
            let mut chosen = Vec::new();
            if branch_direct(&checker, &candidates, bound, &mut chosen, &mut visited)? {
                return Ok(found(chosen));
            }
        }
    } else {
        let total = candidates.len() as u128;
        let mut examined = 1u128;
        for k in 1..=candidates.len() {
            examined = examined.saturating_add(binomial(total, k as u128));
            if examined > SEARCH_LIMIT {
                return Err(Error::TooLarge(examined, SEARCH_LIMIT));
            }
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let set: Vec<TemporalEdge> = idx.iter().map(|&i| candidates[i]).collect();
                if checker.violation(&set).is_none() {
                    return Ok(found(set));
                }
                if !next_combination(&mut idx, candidates.len()) {
                    break;
                }
            }
        }
    }
    Err(Error::Infeasible(format!("no set of labels in {labels:?} reaches base diameter {d}")))
}

fn branch_direct(
    checker: &Checker,
    candidates: &[TemporalEdge],
    bound: usize,
    chosen: &mut Vec<TemporalEdge>,
    visited: &mut u128,
) -> Result<bool> {
    *visited += 1;
    if *visited > SEARCH_LIMIT {
        return Err(Error::TooLarge(*visited, SEARCH_LIMIT));
    }
    let Some((u, v)) = checker.violation(chosen) else {
        return Ok(true);
    };
    if chosen.len() == bound {
        return Ok(false);
    }
    for e in candidates.iter().filter(|e| e.tail == u && e.head == v) {
        chosen.push(*e);
        if branch_direct(checker, candidates, bound, chosen, visited)? {
            chosen.sort_unstable();
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// Path `p1 -> ... -> pn`; explicit labels, or uniform in `[1, t_max]`.
    TemporalPath {
        n: usize,
        t_max: Time,
        labels: Option<Vec<Time>>,
    },
    /// `m` distinct uniform triples over `n` vertices and labels `[1, t_max]`.
    RandomTemporal { n: usize, m: usize, t_max: Time },
    /// `layers` layers of `width` vertices; each edge between consecutive
    /// layers `i -> i + 1` is kept with probability `density` and labelled
    /// `i + 1`.
    LayeredDag { layers: usize, width: usize, density: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

pub fn gen(spec: &GeneratorSpec) -> Result<TemporalGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.family {
        Family::TemporalPath { n, t_max, labels } => {
            if *n < 2 {
                return Err(Error::Infeasible(format!("a path needs 2 vertices, got {n}")));
            }
            let labels = match labels {
                Some(l) if l.len() != n - 1 => {
                    return Err(Error::Infeasible(format!("{} labels for {n} vertices", l.len())))
                }
                Some(l) => l.clone(),
                None if *t_max < 1 => return Err(Error::Infeasible("t_max must be at least 1".into())),
                None => (1..*n).map(|_| rng.gen_range(1..=*t_max)).collect(),
            };
            let names = (1..=*n).map(|i| format!("p{i}")).collect();
            let edges = labels
                .iter()
                .enumerate()
                .map(|(i, &t)| TemporalEdge::new(VertexId::from_index(i), VertexId::from_index(i + 1), t))
                .collect();
            TemporalGraph::from_edges(names, edges)
        }
        Family::RandomTemporal { n, m, t_max } => {
            let slots = (*n as u128) * (n.saturating_sub(1) as u128) * (*t_max as u128);
            if *m as u128 > slots || *m == 0 {
                return Err(Error::Infeasible(format!("{m} distinct edges on {n} vertices with t_max {t_max}")));
            }
            let (n, t_max) = (*n, *t_max as usize);
            let edges = index::sample(&mut rng, slots as usize, *m)
                .into_iter()
                .map(|i| {
                    let (pair, t) = (i / t_max, i % t_max);
                    let (u, off) = (pair / (n - 1), pair % (n - 1));
                    let v = if off >= u { off + 1 } else { off };
                    TemporalEdge::new(VertexId::from_index(u), VertexId::from_index(v), t as Time + 1)
                })
                .collect();
            TemporalGraph::from_edges((0..n).map(|i| format!("v{i}")).collect(), edges)
        }
        Family::LayeredDag { layers, width, density } => {
            if *layers < 2 || *width == 0 || !(0.0..=1.0).contains(density) {
                return Err(Error::Infeasible(format!("{layers} layers of width {width}, density {density}")));
            }
            let id = |l: usize, i: usize| VertexId::from_index(l * width + i);
            let mut edges = Vec::new();
            for l in 0..layers - 1 {
                for i in 0..*width {
                    let mut row: Vec<usize> = (0..*width).filter(|_| rng.gen_bool(*density)).collect();
                    if row.is_empty() {
                        // keep every vertex connected forward
                        row.push(rng.gen_range(0..*width));
                    }
                    edges.extend(row.into_iter().map(|j| TemporalEdge::new(id(l, i), id(l + 1, j), l as Time + 1)));
                }
            }
            let names = (0..layers * width).map(|k| format!("l{}_{}", k / width, k % width)).collect();
            TemporalGraph::from_edges(names, edges)
        }
    }
}
