//! Brute-force reference implementations for validating the generators and
//! statistics on tiny instances: exhaustive half-edge matchings for the
//! configuration model, literal per-pair generation for the other models,
//! and a double-loop recomputation of a(k).

use rand::Rng;

use crate::graph::{build_simple_graph, SimpleGraph, VertexId};
use crate::models::{ModelSpec, EcmOutcome};
use crate::sampling::{
    sample_hrg_coordinates, sample_power_law, DomainError, HrgCoordinate, HrgParams, SeedSpec,
};

const MAX_HALF_EDGES: u64 = 14;

/// Every perfect matching of the labeled half-edges of a degree sequence,
/// with the erased simple graph of each. There are (L-1)!! of them for L
/// half-edges; enumeration is capped at L = 14.
#[derive(Debug, Clone)]
pub struct MatchingEnsemble {
    pub degrees: Vec<u64>,
    /// Each matching as the vertex pairs its half-edge pairs induce.
    pub matchings: Vec<Vec<(VertexId, VertexId)>>,
}

impl MatchingEnsemble {
    pub fn enumerate(degrees: &[u64]) -> Result<Self, DomainError> {
        let total: u64 = degrees.iter().sum();
        if !total.is_multiple_of(2) {
            return Err(DomainError::new("degree sum must be even"));
        }
        if total > MAX_HALF_EDGES {
            return Err(DomainError::new(format!(
                "enumeration supports at most {MAX_HALF_EDGES} half-edges, got {total}"
            )));
        }
        let mut owners: Vec<VertexId> = Vec::with_capacity(total as usize);
        for (v, &d) in degrees.iter().enumerate() {
            owners.extend(std::iter::repeat_n(v as VertexId, d as usize));
        }
        let mut matchings = Vec::new();
        let unmatched: Vec<usize> = (0..owners.len()).collect();
        let mut current = Vec::new();
        enumerate_matchings(&owners, &unmatched, &mut current, &mut matchings);
        Ok(MatchingEnsemble {
            degrees: degrees.to_vec(),
            matchings,
        })
    }

    pub fn count(&self) -> usize {
        self.matchings.len()
    }

    pub fn erased_graphs(&self) -> impl Iterator<Item = SimpleGraph> + '_ {
        self.matchings
            .iter()
            .map(|pairs| build_simple_graph(self.degrees.len(), pairs).unwrap())
    }
}

fn enumerate_matchings(
    owners: &[VertexId],
    unmatched: &[usize],
    current: &mut Vec<(VertexId, VertexId)>,
    out: &mut Vec<Vec<(VertexId, VertexId)>>,
) {
    if unmatched.is_empty() {
        out.push(current.clone());
        return;
    }
    // always pair the first free half-edge; choices of partner span the
    // uniform measure over matchings
    let first = unmatched[0];
    for i in 1..unmatched.len() {
        let partner = unmatched[i];
        let mut rest: Vec<usize> = unmatched[1..].to_vec();
        rest.remove(i - 1);
        current.push((owners[first], owners[partner]));
        enumerate_matchings(owners, &rest, current, out);
        current.pop();
    }
}

pub fn double_factorial_odd(l: u64) -> u64 {
    // (l - 1)!! for even l
    let mut value = 1;
    let mut factor = l.saturating_sub(1);
    while factor > 1 {
        value *= factor;
        factor -= 2;
    }
    value
}

/// Probability that the erased graph contains edge {u, v}, exactly, as the
/// fraction of perfect matchings pairing at least one half-edge of u to v.
pub fn exact_cm_edge_probability(
    degrees: &[u64],
    u: VertexId,
    v: VertexId,
) -> Result<f64, DomainError> {
    let ensemble = MatchingEnsemble::enumerate(degrees)?;
    let hits = ensemble
        .matchings
        .iter()
        .filter(|pairs| {
            pairs
                .iter()
                .any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
        })
        .count();
    Ok(hits as f64 / ensemble.count() as f64)
}

/// Expected erased degree of vertex v under the uniform matching.
pub fn exact_cm_expected_erased_degree(
    degrees: &[u64],
    v: VertexId,
) -> Result<f64, DomainError> {
    let ensemble = MatchingEnsemble::enumerate(degrees)?;
    let total: u64 = ensemble
        .erased_graphs()
        .map(|g| g.degree(v) as u64)
        .sum();
    Ok(total as f64 / ensemble.count() as f64)
}

/// `E[a(k, G)]` over the uniform matching, conditioned on the erased graph
/// containing at least one degree-k vertex. `None` when no matching does.
pub fn exact_cm_annd(degrees: &[u64], k: u32) -> Result<Option<f64>, DomainError> {
    let ensemble = MatchingEnsemble::enumerate(degrees)?;
    let mut total = 0.0;
    let mut count = 0usize;
    for graph in ensemble.erased_graphs() {
        if let Some(value) = naive_annd_at(&graph, k) {
            total += value;
            count += 1;
        }
    }
    Ok((count > 0).then(|| total / count as f64))
}

/// Literal evaluation of a(k) by the defining double loop.
pub fn naive_annd_at(g: &SimpleGraph, k: u32) -> Option<f64> {
    let mut class_size = 0u64;
    let mut neighbor_degree_total = 0u64;
    for v in 0..g.vertex_count() as VertexId {
        if g.degree(v) == k {
            class_size += 1;
            for &nbr in g.neighbors(v) {
                neighbor_degree_total += g.degree(nbr) as u64;
            }
        }
    }
    (k >= 1 && class_size > 0)
        .then(|| neighbor_degree_total as f64 / (k as f64 * class_size as f64))
}

/// The whole a(k) curve by the defining double loop, as (k, value) rows.
pub fn naive_annd_curve(g: &SimpleGraph) -> Vec<(u32, f64)> {
    let max_degree = g.max_degree();
    (1..=max_degree)
        .filter_map(|k| naive_annd_at(g, k).map(|value| (k, value)))
        .collect()
}

/// Rank-1 edges by the literal double loop over keyed pair uniforms; matches
/// the naive generator draw for draw.
pub fn naive_irg_edges(weights: &[u64], mu_n: f64, seed: &SeedSpec) -> Vec<(VertexId, VertexId)> {
    let n = weights.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = (weights[u] as f64 * weights[v] as f64 / mu_n).min(1.0);
            if seed.pair_uniform(u as VertexId, v as VertexId) < p {
                edges.push((u as VertexId, v as VertexId));
            }
        }
    }
    edges
}

/// Hyperbolic edges by the literal double loop over the distance rule,
/// mirroring the generator's pair predicate expression.
pub fn naive_hrg_edges(
    params: &HrgParams,
    coordinates: &[HrgCoordinate],
) -> Vec<(VertexId, VertexId)> {
    let cosh_radius = params.radius().cosh();
    let n = coordinates.len();
    let mut edges = Vec::new();
    for u in 0..n {
        let (cu, su) = (coordinates[u].r.cosh(), coordinates[u].r.sinh());
        for v in (u + 1)..n {
            let delta = (coordinates[u].phi - coordinates[v].phi).abs();
            let theta = std::f64::consts::PI - (std::f64::consts::PI - delta).abs();
            let arg = cu * coordinates[v].r.cosh() - su * coordinates[v].r.sinh() * theta.cos();
            if arg <= cosh_radius {
                edges.push((u as VertexId, v as VertexId));
            }
        }
    }
    edges
}

/// Independent direct-matching configuration model (hand-rolled shuffle),
/// equivalent in distribution to the production generator.
pub fn naive_ecm(degrees: &[u64], seed: &SeedSpec) -> EcmOutcome {
    let total: u64 = degrees.iter().sum();
    assert!(total.is_multiple_of(2), "degree sum must be even");
    let mut owners: Vec<VertexId> = Vec::with_capacity(total as usize);
    for (v, &d) in degrees.iter().enumerate() {
        owners.extend(std::iter::repeat_n(v as VertexId, d as usize));
    }
    let mut rng = seed.stream_rng();
    // Fisher-Yates by hand
    for i in (1..owners.len()).rev() {
        let j = rng.random_range(0..=i);
        owners.swap(i, j);
    }
    let pairs: Vec<(VertexId, VertexId)> = owners
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .collect();
    let graph = build_simple_graph(degrees.len(), &pairs).unwrap();
    EcmOutcome {
        graph,
        sampled_degrees: degrees.to_vec(),
        half_edge_total: total,
    }
}

const MAX_NAIVE_N: usize = 5000;

/// O(n^2) reference path: generate by the most literal method available and
/// recompute a(k) by the defining double loop. Refuses n above 5000.
pub fn naive_generate_and_stats(
    model: &ModelSpec,
    seed: &SeedSpec,
) -> Result<(SimpleGraph, Vec<(u32, f64)>), DomainError> {
    if model.n() > MAX_NAIVE_N {
        return Err(DomainError::new(format!(
            "naive reference path refuses n > {MAX_NAIVE_N}"
        )));
    }
    let graph = match model {
        ModelSpec::Ecm { law, n } => {
            let degrees = crate::sampling::sample_degree_sequence(law, *n, seed);
            // continue the stream for the matching like the generator does
            let mut rng = seed.stream_rng();
            for _ in 0..*n {
                let _: f64 = rng.random();
            }
            let mut owners: Vec<VertexId> = Vec::new();
            for (v, &d) in degrees.iter().enumerate() {
                owners.extend(std::iter::repeat_n(v as VertexId, d as usize));
            }
            for i in (1..owners.len()).rev() {
                let j = rng.random_range(0..=i);
                owners.swap(i, j);
            }
            let pairs: Vec<(VertexId, VertexId)> =
                owners.chunks_exact(2).map(|p| (p[0], p[1])).collect();
            build_simple_graph(*n, &pairs).unwrap()
        }
        ModelSpec::Irg { law, n, .. } => {
            let weights = sample_power_law(law, *n, seed);
            let raw = naive_irg_edges(&weights, law.mu() * *n as f64, seed);
            build_simple_graph(*n, &raw).unwrap()
        }
        ModelSpec::Hrg { params, .. } => {
            let coordinates = sample_hrg_coordinates(params, seed);
            let raw = naive_hrg_edges(params, &coordinates);
            build_simple_graph(params.n(), &raw).unwrap()
        }
    };
    let curve = naive_annd_curve(&graph);
    Ok((graph, curve))
}
