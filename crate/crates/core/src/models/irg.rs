//! Rank-1 inhomogeneous random graph with the Chung-Lu kernel
//! `p(h, h') = min(h h' / (mu n), 1)`.
//!
//! `Naive` and `Pruned` decide every pair from the same keyed uniform, so
//! their edge sets are bit-identical; `Pruned` exists to exercise that
//! contract while skipping the draw for saturated pairs and fanning rows out
//! across threads. `Skipping` is the sorted-weight geometric-jump generator
//! used at large `n`; it is equivalent in distribution only.

use rand::Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::graph::{build_simple_graph, SimpleGraph, VertexId};
use crate::sampling::{sample_power_law_with, DomainError, PowerLawSpec, SeedSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrgStrategy {
    Naive,
    Pruned,
    Skipping,
}

/// One rank-1 realization: the graph, the sampled weights, and the
/// normalization `mu * n` the kernel used.
#[derive(Debug, Clone)]
pub struct IrgOutcome {
    pub graph: SimpleGraph,
    pub weights: Vec<u64>,
    pub mu_n: f64,
}

/// Chung-Lu connection probability `min(h h' / mu_n, 1)`.
pub fn irg_connection_prob(h: f64, h_other: f64, mu_n: f64) -> Result<f64, DomainError> {
    if mu_n.is_nan() || mu_n <= 0.0 {
        return Err(DomainError::new(format!(
            "kernel normalization mu_n must be positive, got {mu_n}"
        )));
    }
    Ok((h * h_other / mu_n).min(1.0))
}

pub fn generate_irg(
    spec: &PowerLawSpec,
    n: usize,
    seed: &SeedSpec,
    strategy: IrgStrategy,
) -> IrgOutcome {
    let mut rng = seed.stream_rng();
    let weights = sample_power_law_with(spec, n, &mut rng);
    let mu_n = spec.mu() * n as f64;
    let raw = match strategy {
        IrgStrategy::Naive => naive_edges(&weights, mu_n, seed),
        IrgStrategy::Pruned => pruned_edges(&weights, mu_n, seed),
        IrgStrategy::Skipping => skipping_edges(&weights, mu_n, &mut rng),
    };
    let graph = build_simple_graph(n, &raw).expect("generated ids are in range");
    IrgOutcome {
        graph,
        weights,
        mu_n,
    }
}

/// Rank-1 graph conditioned on fixed weights.
pub fn irg_from_weights(
    weights: &[u64],
    mu_n: f64,
    seed: &SeedSpec,
    strategy: IrgStrategy,
) -> SimpleGraph {
    let raw = match strategy {
        IrgStrategy::Naive => naive_edges(weights, mu_n, seed),
        IrgStrategy::Pruned => pruned_edges(weights, mu_n, seed),
        IrgStrategy::Skipping => {
            let mut rng = seed.stream_rng();
            skipping_edges(weights, mu_n, &mut rng)
        }
    };
    build_simple_graph(weights.len(), &raw).expect("generated ids are in range")
}

fn naive_edges(weights: &[u64], mu_n: f64, seed: &SeedSpec) -> Vec<(VertexId, VertexId)> {
    let n = weights.len();
    let mut edges = Vec::new();
    for u in 0..n {
        let wu = weights[u] as f64;
        for (v, &wv) in weights.iter().enumerate().skip(u + 1) {
            let p = (wu * wv as f64 / mu_n).min(1.0);
            if seed.pair_uniform(u as VertexId, v as VertexId) < p {
                edges.push((u as VertexId, v as VertexId));
            }
        }
    }
    edges
}

/// Same decisions as [`naive_edges`], evaluated row-parallel in descending
/// weight order with the draw skipped for saturated pairs (`p >= 1` always
/// connects because the keyed uniform is strictly below 1).
fn pruned_edges(weights: &[u64], mu_n: f64, seed: &SeedSpec) -> Vec<(VertexId, VertexId)> {
    let order = descending_weight_order(weights);
    let row = |i: usize| -> Vec<(VertexId, VertexId)> {
        let a = order[i];
        let wa = weights[a as usize] as f64;
        let mut out = Vec::new();
        for &b in &order[i + 1..] {
            let p = wa * weights[b as usize] as f64 / mu_n;
            if p >= 1.0 || seed.pair_uniform(a, b) < p {
                out.push((a, b));
            }
        }
        out
    };
    let rows: Vec<Vec<(VertexId, VertexId)>> = {
        #[cfg(feature = "parallel")]
        {
            (0..order.len().saturating_sub(1))
                .into_par_iter()
                .map(row)
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..order.len().saturating_sub(1)).map(row).collect()
        }
    };
    rows.concat()
}

/// Sorted-weight generator with geometric jumps over non-edges; expected
/// O(n + m) time.
fn skipping_edges(weights: &[u64], mu_n: f64, rng: &mut impl Rng) -> Vec<(VertexId, VertexId)> {
    let order = descending_weight_order(weights);
    let w: Vec<f64> = order.iter().map(|&v| weights[v as usize] as f64).collect();
    let n = order.len();
    let mut edges = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut j = i + 1;
        let mut p = (w[i] * w[j] / mu_n).min(1.0);
        while j < n && p > 0.0 {
            if p < 1.0 {
                let r: f64 = rng.random();
                j += (r.ln() / (1.0 - p).ln()) as usize;
            }
            if j >= n {
                break;
            }
            let q = (w[i] * w[j] / mu_n).min(1.0);
            if rng.random::<f64>() * p < q {
                edges.push((order[i], order[j]));
            }
            p = q;
            j += 1;
        }
    }
    edges
}

fn descending_weight_order(weights: &[u64]) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (0..weights.len() as VertexId).collect();
    order.sort_unstable_by(|&a, &b| {
        weights[b as usize]
            .cmp(&weights[a as usize])
            .then(a.cmp(&b))
    });
    order
}
