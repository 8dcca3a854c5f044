//! Temporal diameter shortcut sets.
//!
//! Temporal graphs carry a discrete time label on every edge, and a path is
//! only usable when its labels increase. This crate reduces the hop diameter
//! of such graphs by adding shortcut edges, in two ways:
//!
//! * [`path`]: graphs whose footprint is a directed path are cut at their
//!   temporal breaks and each piece is shortcut with a static construction.
//! * [`expansion`]: any temporal graph is expanded into a static DAG of
//!   timed vertices, shortcut there, and the shortcuts are translated back.
//!
//! [`reach`], [`static_algos`] and [`shortcut`] hold the supporting graph
//! routines; [`closure`] explores labelled transitive closures; [`testkit`]
//! has the brute-force oracles and seeded generators used by the tests.

pub mod closure;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod path;
pub mod reach;
pub mod shortcut;
pub mod static_algos;
pub mod testkit;

pub use error::{Error, Result};
pub use graph::{build_graph, GraphStats, StaticGraph, TemporalEdge, TemporalGraph, Time, VertexId};
pub use reach::{DiameterReport, PathMode};
pub use shortcut::{Constructor, Method, ShortcutOrigin, ShortcutSet, TemporalShortcutSet};
pub use expansion::{Expansion, TranslationLedger};
pub use closure::ClosureKind;
