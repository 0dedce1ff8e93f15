//! Erased configuration model: pair half-edges uniformly at random, then
//! drop self-loops and merge parallel edges.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{build_simple_graph, SimpleGraph, VertexId};
use crate::sampling::{sample_degree_sequence_with, PowerLawSpec, SeedSpec};

/// One erased-configuration-model realization. The graph's degrees are the
/// erased degrees; the sampled (pre-erasure) sequence is retained because the
/// two play different roles in the statistics.
#[derive(Debug, Clone)]
pub struct EcmOutcome {
    pub graph: SimpleGraph,
    pub sampled_degrees: Vec<u64>,
    /// Total number of half-edges, `sum(sampled_degrees)`; always even.
    pub half_edge_total: u64,
}

impl EcmOutcome {
    pub fn erased_degrees(&self) -> &[u32] {
        self.graph.degrees()
    }

    pub fn erased_degree_sum(&self) -> u64 {
        self.graph.degrees().iter().map(|&d| d as u64).sum()
    }
}

/// Samples an evenized power-law degree sequence and builds the erased
/// configuration model on it, all from one sequential stream.
pub fn generate_ecm(spec: &PowerLawSpec, n: usize, seed: &SeedSpec) -> EcmOutcome {
    let mut rng = seed.stream_rng();
    let degrees = sample_degree_sequence_with(spec, n, &mut rng);
    let graph = match_half_edges(&degrees, &mut rng);
    let half_edge_total: u64 = degrees.iter().sum();
    EcmOutcome {
        graph,
        sampled_degrees: degrees,
        half_edge_total,
    }
}

/// Erased configuration model conditioned on a fixed degree sequence.
/// The sum of `degrees` must be even.
pub fn ecm_from_degrees(degrees: &[u64], seed: &SeedSpec) -> EcmOutcome {
    let mut rng = seed.stream_rng();
    let graph = match_half_edges(degrees, &mut rng);
    EcmOutcome {
        graph,
        sampled_degrees: degrees.to_vec(),
        half_edge_total: degrees.iter().sum(),
    }
}

/// Uniform perfect matching of half-edges: shuffle the half-edge array and
/// pair consecutive entries, then erase loops and multi-edges.
fn match_half_edges(degrees: &[u64], rng: &mut impl Rng) -> SimpleGraph {
    let total: u64 = degrees.iter().sum();
    assert!(total.is_multiple_of(2), "degree sum must be even to pair half-edges");
    let mut half_edges: Vec<VertexId> = Vec::with_capacity(total as usize);
    for (v, &d) in degrees.iter().enumerate() {
        half_edges.extend(std::iter::repeat_n(v as VertexId, d as usize));
    }
    half_edges.shuffle(rng);
    let raw: Vec<(VertexId, VertexId)> = half_edges
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .collect();
    build_simple_graph(degrees.len(), &raw).expect("half-edge owners are in range")
}
