//! Small named graphs used throughout the tests and examples.

use crate::graph::{build_graph, TemporalGraph};

fn build(triples: &[(&str, &str, i64)]) -> TemporalGraph {
    build_graph(triples.iter().copied()).expect("fixture is well-formed")
}

/// Strict temporal path `p1 -1-> p2 -2-> p3 -3-> p4`.
pub fn g1() -> TemporalGraph {
    build(&[("p1", "p2", 1), ("p2", "p3", 2), ("p3", "p4", 3)])
}

/// Path with a temporal break at `p3`.
pub fn g2() -> TemporalGraph {
    build(&[("p1", "p2", 1), ("p2", "p3", 2), ("p3", "p4", 1), ("p4", "p5", 2)])
}

/// Two-edge path `a -1-> b -2-> c`.
pub fn g3() -> TemporalGraph {
    build(&[("a", "b", 1), ("b", "c", 2)])
}

/// `a` reaches `c` but not `d`; `x` reaches `a` but not `c`.
pub fn g4() -> TemporalGraph {
    build(&[("x", "a", 6), ("a", "b", 6), ("b", "c", 7), ("c", "d", 7)])
}

/// Temporal diameter 1 whose expansion diameter is 5 rather than 3.
pub fn ratio_counterexample() -> TemporalGraph {
    build(&[("u", "w", 1), ("u", "a", 5), ("a", "w", 6)])
}
