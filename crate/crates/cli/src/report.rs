//! The JSON document written by `tdss shortcut` and read back by `tdss verify`.

use serde::{Deserialize, Serialize};
use tdss_core::expansion::TranslationLedger;
use tdss_core::{GraphStats, TemporalEdge, TemporalGraph, Time};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: GraphStats,
    pub parameters: Parameters,
    pub results: Results,
    /// `[tail, head, label]` triples, sorted.
    pub shortcuts: Vec<(String, String, Time)>,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub method: String,
    pub target: u32,
    pub seed: Option<u64>,
    pub multiplier: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Results {
    pub diameter_before: Option<u32>,
    /// Expansion diameter before and after the static shortcuts (expansion
    /// methods only).
    pub expansion_diameter_before: Option<u32>,
    pub expansion_diameter: Option<u32>,
    pub static_shortcuts: usize,
    pub ledger: Option<LedgerCounts>,
    /// Diameter over the pairs reachable before shortcutting.
    pub base_diameter_after: Option<u32>,
    pub diameter_after: Option<u32>,
    pub new_pairs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerCounts {
    pub new_edges: usize,
    pub duplicate_hits: usize,
    pub existing_hits: usize,
    pub skipped_gadget_edges: usize,
}

impl From<&TranslationLedger> for LedgerCounts {
    fn from(l: &TranslationLedger) -> Self {
        LedgerCounts {
            new_edges: l.new_edges.len(),
            duplicate_hits: l.duplicate_hits,
            existing_hits: l.existing_hits,
            skipped_gadget_edges: l.skipped_gadget_edges,
        }
    }
}

pub fn named(g: &TemporalGraph, edges: &[TemporalEdge]) -> Vec<(String, String, Time)> {
    edges
        .iter()
        .map(|e| (g.name(e.tail).to_string(), g.name(e.head).to_string(), e.label))
        .collect()
}
