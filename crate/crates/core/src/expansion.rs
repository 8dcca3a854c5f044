//! Static expansion of a temporal graph and translation of its shortcuts.
//!
//! Every vertex `v` becomes a gadget of timed vertices `v_t^in`, `v_t^out`
//! for `t_min <= t <= t_max + 1`. Inside a gadget, `v_t^in -> v_t'^out` for
//! every `t' >= t` (waiting); a temporal edge `(v, w, t)` becomes the cross
//! edge `v_t^out -> w_{t+1}^in`. Closure edges between different gadgets
//! always move forward in time, so each translates to the temporal edge
//! `(base(tail), base(head), time(tail))`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{StaticGraph, TemporalEdge, TemporalGraph, Time, VertexId};
use crate::reach::{base_diameter, temporal_diameter, DiameterReport, PathMode};
use crate::shortcut::{
    verify_against_closure, Constructor, ShortcutOrigin, ShortcutSet, TemporalShortcutSet,
};
use crate::static_algos::{static_diameter, transitive_closure, ClosureGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TimedVertex {
    pub base: VertexId,
    pub time: Time,
    pub side: Side,
}

impl TimedVertex {
    pub fn new(base: VertexId, time: Time, side: Side) -> Self {
        TimedVertex { base, time, side }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub graph: StaticGraph,
    pub t_min: Time,
    pub t_max: Time,
    /// Vertex count of the source graph.
    pub bases: usize,
    pub gadget_edges: usize,
    pub cross_edges: Vec<(VertexId, VertexId)>,
}

impl Expansion {
    /// Time steps per gadget.
    pub fn slots(&self) -> usize {
        (self.t_max - self.t_min + 2) as usize
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn contains(&self, tv: TimedVertex) -> bool {
        tv.base.index() < self.bases && tv.time >= self.t_min && tv.time <= self.t_max + 1
    }

    pub fn id(&self, tv: TimedVertex) -> Option<VertexId> {
        if !self.contains(tv) {
            return None;
        }
        let slot = (tv.time - self.t_min) as usize;
        let side = match tv.side {
            Side::In => 0,
            Side::Out => 1,
        };
        Some(VertexId::from_index((tv.base.index() * self.slots() + slot) * 2 + side))
    }

    pub fn timed(&self, v: VertexId) -> TimedVertex {
        let i = v.index();
        let side = if i % 2 == 0 { Side::In } else { Side::Out };
        let rest = i / 2;
        TimedVertex {
            base: VertexId::from_index(rest / self.slots()),
            time: self.t_min + (rest % self.slots()) as Time,
            side,
        }
    }

    /// Whether `(u, v)` has the shape of a gadget edge.
    pub fn is_gadget_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = (self.timed(u), self.timed(v));
        a.base == b.base && a.side == Side::In && b.side == Side::Out && b.time >= a.time
    }

    pub fn label(&self, g: &TemporalGraph, v: VertexId) -> String {
        let tv = self.timed(v);
        let side = match tv.side {
            Side::In => "in",
            Side::Out => "out",
        };
        format!("{}_{}^{}", g.name(tv.base), tv.time, side)
    }
}

pub fn build_expansion(g: &TemporalGraph) -> Result<Expansion> {
    let stats = g.stats()?;
    let slots = (stats.t_max - stats.t_min + 2) as usize;
    let mut x = Expansion {
        graph: StaticGraph::new(g.n() * slots * 2),
        t_min: stats.t_min,
        t_max: stats.t_max,
        bases: g.n(),
        gadget_edges: 0,
        cross_edges: Vec::with_capacity(g.m()),
    };
    let mut edges = Vec::with_capacity(g.n() * slots * (slots + 1) / 2 + g.m());
    for v in g.vertices() {
        for t in stats.t_min..=stats.t_max + 1 {
            let tail = x.id(TimedVertex::new(v, t, Side::In)).unwrap();
            for t2 in t..=stats.t_max + 1 {
                edges.push((tail, x.id(TimedVertex::new(v, t2, Side::Out)).unwrap()));
            }
        }
    }
    x.gadget_edges = edges.len();
    for e in g.edges() {
        let c = (
            x.id(TimedVertex::new(e.tail, e.label, Side::Out)).unwrap(),
            x.id(TimedVertex::new(e.head, e.label + 1, Side::In)).unwrap(),
        );
        x.cross_edges.push(c);
        edges.push(c);
    }
    x.graph = StaticGraph::from_edges(x.graph.n(), edges);
    Ok(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCheck {
    /// Temporal (strict) diameter of the source graph.
    pub k: Option<u32>,
    /// Static diameter of its expansion.
    pub expansion_diameter: Option<u32>,
    /// `K == 2k + 1`.
    pub ratio_holds: bool,
}

pub fn expansion_diameter_check(g: &TemporalGraph) -> Result<RatioCheck> {
    let x = build_expansion(g)?;
    let k = temporal_diameter(g, PathMode::Strict);
    let big_k = static_diameter(&x.graph);
    Ok(RatioCheck {
        k,
        expansion_diameter: big_k,
        ratio_holds: matches!((k, big_k), (Some(k), Some(kk)) if kk == 2 * k + 1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Translation {
    /// Stays inside one gadget.
    Skip,
    Edge(TemporalEdge),
}

/// Maps an edge between timed vertices onto the source graph.
///
/// Edges inside one gadget are skipped when they are gadget edges or move
/// forward in time (closure edges through a cycle of the source graph can
/// return to the same gadget later). Anything going backwards, or across
/// gadgets without moving forward, is malformed.
pub fn translate_edge(x: &Expansion, u: VertexId, v: VertexId) -> Result<Translation> {
    if u.index() >= x.n() || v.index() >= x.n() {
        return Err(Error::MalformedEdge(format!("{u} -> {v}")));
    }
    let (a, b) = (x.timed(u), x.timed(v));
    let malformed = || {
        Error::MalformedEdge(format!(
            "{}@{}:{:?} -> {}@{}:{:?}",
            a.base, a.time, a.side, b.base, b.time, b.side
        ))
    };
    if a.base == b.base {
        if x.is_gadget_edge(u, v) || b.time > a.time {
            Ok(Translation::Skip)
        } else {
            Err(malformed())
        }
    } else if b.time > a.time {
        Ok(Translation::Edge(TemporalEdge::new(a.base, b.base, a.time)))
    } else {
        Err(malformed())
    }
}

/// How the shortcuts of a static set fared under translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationLedger {
    /// Translations that are new to the source graph.
    pub new_edges: TemporalShortcutSet,
    /// Translations equal to an earlier new edge.
    pub duplicate_hits: usize,
    /// Translations already present in the source graph.
    pub existing_hits: usize,
    pub skipped_gadget_edges: usize,
}

impl TranslationLedger {
    pub fn translated(&self) -> usize {
        self.new_edges.len() + self.duplicate_hits + self.existing_hits
    }
}

pub fn translate_graph(
    g: &TemporalGraph,
    x: &Expansion,
    s: &ShortcutSet,
) -> Result<(TemporalGraph, TranslationLedger)> {
    translate_with_closure(g, x, &transitive_closure(&x.graph), s)
}

/// As [`translate_graph`] with the closure of `x.graph` precomputed.
pub fn translate_with_closure(
    g: &TemporalGraph,
    x: &Expansion,
    closure: &ClosureGraph,
    s: &ShortcutSet,
) -> Result<(TemporalGraph, TranslationLedger)> {
    let mut translated = Vec::with_capacity(s.len());
    let mut skipped = 0;
    for &(u, v) in &s.edges {
        if !closure.contains(u, v) {
            return Err(Error::InvalidShortcut(u.index(), v.index()));
        }
        match translate_edge(x, u, v)? {
            Translation::Skip => skipped += 1,
            Translation::Edge(e) => translated.push(e),
        }
    }
    translated.sort_unstable();
    let mut new = BTreeSet::new();
    let (mut duplicate_hits, mut existing_hits) = (0, 0);
    for e in translated {
        if g.contains_edge(&e) {
            existing_hits += 1;
        } else if !new.insert(e) {
            duplicate_hits += 1;
        }
    }
    let new_edges = TemporalShortcutSet::new(new.into_iter().collect(), ShortcutOrigin::ExpansionTranslation);
    let augmented = g.with_edges(new_edges.edges.iter().copied())?;
    Ok((
        augmented,
        TranslationLedger {
            new_edges,
            duplicate_hits,
            existing_hits,
            skipped_gadget_edges: skipped,
        },
    ))
}

/// Translates a path of the expansion, dropping edges inside gadgets.
pub fn translate_path(x: &Expansion, path: &[VertexId]) -> Result<Vec<TemporalEdge>> {
    let mut out = Vec::new();
    for w in path.windows(2) {
        if let Translation::Edge(e) = translate_edge(x, w[0], w[1])? {
            out.push(e);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ExpansionOutcome {
    pub expansion: Expansion,
    pub static_shortcuts: ShortcutSet,
    pub expansion_diameter_before: Option<u32>,
    /// Diameter of the expansion plus `static_shortcuts`.
    pub expansion_diameter_after: Option<u32>,
    pub shortcuts: TemporalShortcutSet,
    pub report: DiameterReport,
    pub ledger: TranslationLedger,
}

/// Shortcuts the expansion of `g` down to diameter `d` and translates the
/// result back onto `g`.
pub fn shortcut_via_expansion(g: &TemporalGraph, d: u32, method: Constructor) -> Result<ExpansionOutcome> {
    method.check_target(d)?;
    let x = build_expansion(g)?;
    let closure = transitive_closure(&x.graph);
    let reach = closure.reach_counts();
    let before = crate::static_algos::static_diameter_with_reach(&x.graph, &reach);
    let s = if before.map_or(true, |k| k <= d) {
        method.build(&StaticGraph::new(0), d)?
    } else {
        method.build(&x.graph, d)?
    };
    let verdict = verify_against_closure(&closure, &s, d);
    let (augmented, ledger) = translate_with_closure(g, &x, &closure, &s)?;
    let report = base_diameter(g, &augmented, PathMode::Strict)?;
    Ok(ExpansionOutcome {
        expansion: x,
        static_shortcuts: s,
        expansion_diameter_before: before,
        expansion_diameter_after: verdict.diameter_achieved,
        shortcuts: ledger.new_edges.clone(),
        report,
        ledger,
    })
}

/// Graphviz rendering; gadget edges dashed, cross edges solid and
/// `shortcuts` (if any) bold red.
pub fn to_dot(g: &TemporalGraph, x: &Expansion, shortcuts: Option<&ShortcutSet>) -> String {
    let mut out = String::from("digraph expansion {\n  rankdir=LR;\n");
    let node = |v: VertexId| x.label(g, v);
    for base in g.vertices() {
        let _ = writeln!(out, "  subgraph \"cluster_{}\" {{\n    label=\"{}\";", base.index(), g.name(base));
        for t in x.t_min..=x.t_max + 1 {
            for side in [Side::In, Side::Out] {
                let v = x.id(TimedVertex::new(base, t, side)).unwrap();
                let _ = writeln!(out, "    \"{}\";", node(v));
            }
        }
        out.push_str("  }\n");
    }
    let cross: BTreeSet<_> = x.cross_edges.iter().copied().collect();
    for (u, v) in x.graph.edges() {
        let style = if cross.contains(&(u, v)) { "solid" } else { "dashed" };
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [style={style}];", node(u), node(v));
    }
    if let Some(s) = shortcuts {
        for &(u, v) in &s.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [color=red, penwidth=2];", node(u), node(v));
        }
    }
    out.push_str("}\n");
    out
}

impl fmt::Display for RatioCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<u32>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        let bound = self.k.map(|k| 2 * k + 1);
        let rel = match (self.expansion_diameter, bound) {
            (Some(a), Some(b)) if a > b => ">",
            (Some(a), Some(b)) if a < b => "<",
            _ => "=",
        };
        if rel == "=" {
            write!(f, "K={}, 2k+1={}", show(self.expansion_diameter), show(bound))
        } else {
            write!(f, "K={} {rel} 2k+1={}", show(self.expansion_diameter), show(bound))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g1, g3, ratio_counterexample};
    use crate::graph::build_graph;
    use crate::reach::{reach_matrix, shortest_temporal_path};
    use crate::static_algos::{static_distances, topological_order};

    fn tv(g: &TemporalGraph, x: &Expansion, name: &str, t: Time, side: Side) -> VertexId {
        x.id(TimedVertex::new(g.vertex(name).unwrap(), t, side)).unwrap()
    }

    #[test]
    fn g3_counts() {
        let g = g3();
        let x = build_expansion(&g).unwrap();
        assert_eq!(x.n(), 18);
        assert_eq!(x.gadget_edges, 18);
        assert_eq!(x.graph.m(), 20);
        let cross = vec![
            (tv(&g, &x, "a", 1, Side::Out), tv(&g, &x, "b", 2, Side::In)),
            (tv(&g, &x, "b", 2, Side::Out), tv(&g, &x, "c", 3, Side::In)),
        ];
        assert_eq!(x.cross_edges, cross);
        assert!(topological_order(&x.graph).is_ok());
    }

    #[test]
    fn single_edge_counts() {
        let g = build_graph([("a", "b", 5)]).unwrap();
        let x = build_expansion(&g).unwrap();
        assert_eq!((x.t_min, x.t_max, x.slots()), (5, 5, 2));
        assert_eq!(x.n(), 8);
        assert_eq!(x.gadget_edges, 6);
        assert_eq!(x.cross_edges.len(), 1);
    }

    #[test]
    fn empty_graph_has_no_expansion() {
        assert_eq!(build_expansion(&TemporalGraph::empty()).unwrap_err(), Error::NoEdges);
    }

    #[test]
    fn ids_round_trip() {
        let g = g3();
        let x = build_expansion(&g).unwrap();
        for i in 0..x.n() {
            let v = VertexId::from_index(i);
            assert_eq!(x.id(x.timed(v)), Some(v));
        }
        assert_eq!(x.id(TimedVertex::new(VertexId(0), 4, Side::In)), None);
    }

    #[test]
    fn ratio_examples() {
        let c = expansion_diameter_check(&g3()).unwrap();
        assert_eq!((c.k, c.expansion_diameter, c.ratio_holds), (Some(2), Some(5), true));
        let c = expansion_diameter_check(&g1()).unwrap();
        assert_eq!((c.k, c.expansion_diameter, c.ratio_holds), (Some(3), Some(7), true));
        let c = expansion_diameter_check(&ratio_counterexample()).unwrap();
        assert_eq!((c.k, c.expansion_diameter, c.ratio_holds), (Some(1), Some(5), false));
        assert_eq!(c.to_string(), "K=5 > 2k+1=3");
    }

    #[test]
    fn counterexample_detour_pair() {
        let g = ratio_counterexample();
        let x = build_expansion(&g).unwrap();
        let d = static_distances(&x.graph, tv(&g, &x, "u", 2, Side::In)).unwrap();
        assert_eq!(d.get(tv(&g, &x, "w", 7, Side::Out)), Some(5));
    }

    #[test]
    fn edge_translation_examples() {
        let g = g3();
        let x = build_expansion(&g).unwrap();
        let t = |a, ta, sa, b, tb, sb| translate_edge(&x, tv(&g, &x, a, ta, sa), tv(&g, &x, b, tb, sb));
        assert_eq!(
            t("a", 1, Side::Out, "b", 2, Side::In).unwrap(),
            Translation::Edge(g.edge("a", "b", 1).unwrap())
        );
        assert_eq!(t("a", 1, Side::In, "a", 3, Side::Out).unwrap(), Translation::Skip);
        let ac = TemporalEdge::new(g.vertex("a").unwrap(), g.vertex("c").unwrap(), 1);
        assert_eq!(t("a", 1, Side::Out, "c", 3, Side::In).unwrap(), Translation::Edge(ac));
        assert!(matches!(t("a", 3, Side::Out, "a", 1, Side::In), Err(Error::MalformedEdge(_))));
        assert!(matches!(t("a", 2, Side::Out, "b", 2, Side::In), Err(Error::MalformedEdge(_))));
    }

    #[test]
    fn closure_moves_forward_in_time() {
        for g in [g1(), g3(), ratio_counterexample()] {
            let x = build_expansion(&g).unwrap();
            for &(u, v) in &transitive_closure(&x.graph).closure_edges {
                let (a, b) = (x.timed(u), x.timed(v));
                if a.base != b.base {
                    assert!(a.time < b.time);
                }
                assert!(translate_edge(&x, u, v).is_ok());
            }
        }
    }

    #[test]
    fn reachability_corresponds() {
        for g in [g1(), g3(), ratio_counterexample(), crate::fixtures::g2(), crate::fixtures::g4()] {
            let x = build_expansion(&g).unwrap();
            let r = reach_matrix(&g, PathMode::Strict);
            for u in g.vertices() {
                let d = static_distances(&x.graph, x.id(TimedVertex::new(u, x.t_min, Side::In)).unwrap()).unwrap();
                for v in g.vertices() {
                    let hit = (x.t_min..=x.t_max + 1)
                        .any(|t| d.get(x.id(TimedVertex::new(v, t, Side::Out)).unwrap()).is_some());
                    assert_eq!(hit, r.get(u, v), "{} -> {}", g.name(u), g.name(v));
                }
            }
        }
    }

    #[test]
    fn ledger_examples() {
        let g = g3();
        let x = build_expansion(&g).unwrap();
        let e = |a, ta, sa, b, tb, sb| (tv(&g, &x, a, ta, sa), tv(&g, &x, b, tb, sb));
        let ac = TemporalEdge::new(g.vertex("a").unwrap(), g.vertex("c").unwrap(), 1);

        let s = ShortcutSet::manual([e("a", 1, Side::Out, "c", 3, Side::In)]);
        let (aug, l) = translate_graph(&g, &x, &s).unwrap();
        assert!(aug.contains_edge(&ac));
        assert_eq!((l.new_edges.len(), l.duplicate_hits, l.existing_hits), (1, 0, 0));

        let s = ShortcutSet::manual([e("a", 1, Side::Out, "c", 3, Side::In), e("a", 1, Side::Out, "c", 3, Side::Out)]);
        let (_, l) = translate_graph(&g, &x, &s).unwrap();
        assert_eq!((l.new_edges.len(), l.duplicate_hits, l.existing_hits), (1, 1, 0));
        assert_eq!(l.new_edges.edges, vec![ac]);

        let s = ShortcutSet::manual([e("a", 1, Side::Out, "b", 2, Side::In), e("a", 1, Side::In, "a", 3, Side::Out)]);
        let (aug, l) = translate_graph(&g, &x, &s).unwrap();
        assert_eq!(aug, g);
        assert_eq!((l.new_edges.len(), l.duplicate_hits, l.existing_hits, l.skipped_gadget_edges), (0, 0, 1, 1));
        assert_eq!(l.translated(), 1);

        let s = ShortcutSet::manual([e("c", 1, Side::Out, "a", 3, Side::In)]);
        assert!(matches!(translate_graph(&g, &x, &s), Err(Error::InvalidShortcut(..))));
    }

    #[test]
    fn pipeline_saturating_on_g3() {
        let g = g3();
        let c = Constructor::Random { seed: 7, multiplier: 1e6 };
        let out = shortcut_via_expansion(&g, 1, c).unwrap();
        assert_eq!(out.expansion_diameter_after, Some(1));
        assert_eq!(out.report.base_diameter, Some(1));
        assert!(out.shortcuts.len() <= out.static_shortcuts.len());
    }

    #[test]
    fn pipeline_noop_at_current_diameter() {
        let g = g3();
        for c in [Constructor::Greedy, Constructor::Random { seed: 1, multiplier: 2.0 }] {
            let out = shortcut_via_expansion(&g, 5, c).unwrap();
            assert!(out.static_shortcuts.is_empty());
            assert!(out.shortcuts.is_empty());
            assert_eq!(out.report.base_diameter, Some(2));
        }
    }

    #[test]
    fn pipeline_greedy_on_g1() {
        let g = g1();
        let out = shortcut_via_expansion(&g, 4, Constructor::Greedy).unwrap();
        let k = out.expansion_diameter_after.unwrap();
        assert!(k <= 4);
        assert!(out.report.base_diameter.unwrap() <= k);
        assert!(out.report.new_pairs.is_empty());
    }

    #[test]
    fn translated_paths_are_temporal() {
        let g = g1();
        let x = build_expansion(&g).unwrap();
        let p1 = g.vertex("p1").unwrap();
        let p4 = g.vertex("p4").unwrap();
        let path = crate::static_algos::static_shortest_path(
            &x.graph,
            x.id(TimedVertex::new(p1, 1, Side::In)).unwrap(),
            x.id(TimedVertex::new(p4, 4, Side::Out)).unwrap(),
        )
        .unwrap();
        let t = translate_path(&x, &path).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(path.len() - 1, 2 * t.len() + 1);
        assert_eq!(Some(t), shortest_temporal_path(&g, p1, p4, PathMode::Strict).unwrap());
    }

    #[test]
    fn same_gadget_shortcut_breaks_the_upper_path_bound() {
        // u_1^out reaches u_3^in through w, so that pair is a closure edge;
        // with it added, the shortest u_1^out -> u_3^out path uses two
        // skipped edges in a row and translates to nothing.
        let g = build_graph([("u", "w", 1), ("w", "u", 2)]).unwrap();
        let x = build_expansion(&g).unwrap();
        let (a, b) = (tv(&g, &x, "u", 1, Side::Out), tv(&g, &x, "u", 3, Side::In));
        let s = ShortcutSet::manual([(a, b)]);
        assert!(translate_graph(&g, &x, &s).unwrap().1.skipped_gadget_edges == 1);
        let host = s.apply(&x.graph);
        let p = crate::static_algos::static_shortest_path(&host, a, tv(&g, &x, "u", 3, Side::Out)).unwrap();
        let t = translate_path(&x, &p).unwrap();
        assert_eq!((p.len() - 1, t.len()), (2, 0));
    }

    #[test]
    fn dot_styles() {
        let g = g3();
        let x = build_expansion(&g).unwrap();
        let s = ShortcutSet::manual([(tv(&g, &x, "a", 1, Side::Out), tv(&g, &x, "c", 3, Side::In))]);
        let dot = to_dot(&g, &x, Some(&s));
        assert_eq!(dot.matches("style=dashed").count(), 18);
        assert_eq!(dot.matches("style=solid").count(), 2);
        assert!(dot.contains("\"a_1^out\" -> \"c_3^in\" [color=red"));
    }
}
