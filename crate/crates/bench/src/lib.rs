//! Workloads shared by the criterion benches.

use tdss_core::testkit::{gen, Family, GeneratorSpec};
use tdss_core::{TemporalGraph, Time};

/// Layered DAG; its expansion is the usual static-construction workload.
pub fn layered(layers: usize, width: usize, seed: u64) -> TemporalGraph {
    generate(Family::LayeredDag { layers, width, density: 0.4 }, seed)
}

/// Path `p1..pn` with uniform labels, so breaks show up at random.
pub fn temporal_path(n: usize, t_max: Time, seed: u64) -> TemporalGraph {
    generate(Family::TemporalPath { n, t_max, labels: None }, seed)
}

/// Path `p1..pn` with labels `1..n-1`: no breaks, diameter `n - 1`.
pub fn increasing_path(n: usize) -> TemporalGraph {
    let labels = (1..n as Time).collect();
    generate(Family::TemporalPath { n, t_max: n as Time, labels: Some(labels) }, 0)
}

pub fn random(n: usize, m: usize, t_max: Time, seed: u64) -> TemporalGraph {
    generate(Family::RandomTemporal { n, m, t_max }, seed)
}

fn generate(family: Family, seed: u64) -> TemporalGraph {
    gen(&GeneratorSpec { family, seed }).expect("bench workload parameters are feasible")
}
