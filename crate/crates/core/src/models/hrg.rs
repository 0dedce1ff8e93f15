//! Threshold hyperbolic random graph: n points on a disk of radius R, edge
//! iff hyperbolic distance <= R.
//!
//! Given coordinates the edge set is deterministic, so the `Band` strategy
//! (radial annuli plus per-band angular windows) must reproduce the `Naive`
//! all-pairs edge set exactly; both run the identical pair predicate and the
//! windows are only used to rule pairs out.

use std::f64::consts::PI;

use crate::graph::{build_simple_graph, SimpleGraph, VertexId};
use crate::sampling::{sample_hrg_coordinates, HrgCoordinate, HrgParams, SeedSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrgStrategy {
    Naive,
    Band,
}

#[derive(Debug, Clone)]
pub struct HrgOutcome {
    pub graph: SimpleGraph,
    pub coordinates: Vec<HrgCoordinate>,
    pub params: HrgParams,
}

/// Hyperbolic distance between `(r, phi)` points on the disk.
pub fn hyperbolic_distance(u: (f64, f64), v: (f64, f64)) -> f64 {
    let delta = (u.1 - v.1).abs();
    let theta = PI - (PI - delta).abs();
    let arg = u.0.cosh() * v.0.cosh() - u.0.sinh() * v.0.sinh() * theta.cos();
    arg.max(1.0).acosh()
}

/// Approximate marginal connection probability given the types
/// `t = e^{(R - r)/2}`: `min(acos(1 - 2 x^2) / pi, 1)` with
/// `x = nu t t' / n`. Exact edges use the distance rule, not this kernel.
pub fn hrg_connection_prob(t_u: f64, t_v: f64, n: usize, nu: f64) -> f64 {
    let x = nu * t_u * t_v / n as f64;
    if x >= 1.0 {
        1.0
    } else {
        (1.0 - 2.0 * x * x).acos() / PI
    }
}

pub fn generate_hrg(params: &HrgParams, seed: &SeedSpec, strategy: HrgStrategy) -> HrgOutcome {
    let coordinates = sample_hrg_coordinates(params, seed);
    let graph = hrg_from_coordinates(params, &coordinates, strategy);
    HrgOutcome {
        graph,
        coordinates,
        params: *params,
    }
}

pub fn hrg_from_coordinates(
    params: &HrgParams,
    coordinates: &[HrgCoordinate],
    strategy: HrgStrategy,
) -> SimpleGraph {
    let pre = Precomputed::new(params, coordinates);
    let raw = match strategy {
        HrgStrategy::Naive => naive_edges(&pre),
        HrgStrategy::Band => band_edges(&pre),
    };
    build_simple_graph(coordinates.len(), &raw).expect("generated ids are in range")
}

struct Precomputed {
    radius: f64,
    cosh_radius: f64,
    r: Vec<f64>,
    cosh_r: Vec<f64>,
    sinh_r: Vec<f64>,
    phi: Vec<f64>,
}

impl Precomputed {
    fn new(params: &HrgParams, coordinates: &[HrgCoordinate]) -> Self {
        Precomputed {
            radius: params.radius(),
            cosh_radius: params.radius().cosh(),
            r: coordinates.iter().map(|c| c.r).collect(),
            cosh_r: coordinates.iter().map(|c| c.r.cosh()).collect(),
            sinh_r: coordinates.iter().map(|c| c.r.sinh()).collect(),
            phi: coordinates.iter().map(|c| c.phi).collect(),
        }
    }

    /// The one pair predicate both strategies share: distance <= R, tested
    /// as cosh(d) <= cosh(R).
    #[inline]
    fn connected(&self, u: usize, v: usize) -> bool {
        let delta = (self.phi[u] - self.phi[v]).abs();
        let theta = PI - (PI - delta).abs();
        self.cosh_r[u] * self.cosh_r[v] - self.sinh_r[u] * self.sinh_r[v] * theta.cos()
            <= self.cosh_radius
    }
}

fn naive_edges(pre: &Precomputed) -> Vec<(VertexId, VertexId)> {
    let n = pre.r.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if pre.connected(u, v) {
                edges.push((u as VertexId, v as VertexId));
            }
        }
    }
    edges
}

/// Angular half-width that any vertex with radius >= `rho` must lie within to
/// connect to a vertex of radius `r`. Returns `None` when no such vertex can
/// connect at all. Slightly widened so float rounding can only admit extra
/// candidates, never lose one.
fn angular_window(cosh_r: f64, sinh_r: f64, rho: f64, cosh_radius: f64) -> Option<f64> {
    let den = sinh_r * rho.sinh();
    if den <= 0.0 {
        return Some(PI);
    }
    let mut c = (cosh_r * rho.cosh() - cosh_radius) / den;
    c = c - c.abs() * 1e-12 - 1e-12;
    if c >= 1.0 {
        None
    } else if c <= -1.0 {
        Some(PI)
    } else {
        Some((c.acos() + 1e-9).min(PI))
    }
}

fn band_edges(pre: &Precomputed) -> Vec<(VertexId, VertexId)> {
    let n = pre.r.len();
    let radius = pre.radius;
    // Inner band [0, R/2), then equal annuli up to R.
    let tail_bands = ((radius * 0.25 / std::f64::consts::LN_2).ceil() as usize).max(1);
    let mut bounds = Vec::with_capacity(tail_bands + 2);
    bounds.push(0.0);
    bounds.push(radius / 2.0);
    for i in 1..=tail_bands {
        bounds.push(radius / 2.0 + radius / 2.0 * i as f64 / tail_bands as f64);
    }
    let band_count = bounds.len() - 1;
    let band_of = |r: f64| -> usize {
        let mut b = 0;
        while b + 1 < band_count && r >= bounds[b + 1] {
            b += 1;
        }
        b
    };

    // Members of each band sorted by angle.
    let mut bands: Vec<Vec<(f64, VertexId)>> = vec![Vec::new(); band_count];
    let mut vertex_band: Vec<usize> = Vec::with_capacity(n);
    for v in 0..n {
        let b = band_of(pre.r[v]);
        vertex_band.push(b);
        bands[b].push((pre.phi[v], v as VertexId));
    }
    for members in &mut bands {
        members.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    }

    let mut edges = Vec::new();
    let mut scan = |u: usize, members: &[(f64, VertexId)], theta: f64, same_band: bool| {
        let mut consider = |slice: &[(f64, VertexId)]| {
            for &(_, v) in slice {
                if same_band && v as usize <= u {
                    continue;
                }
                if pre.connected(u, v as usize) {
                    edges.push((u as VertexId, v));
                }
            }
        };
        if theta >= PI - 1e-12 {
            consider(members);
            return;
        }
        let phi = pre.phi[u];
        let lo = phi - theta;
        let hi = phi + theta;
        let search = |x: f64| members.partition_point(|&(p, _)| p < x);
        if lo < 0.0 {
            consider(&members[search(lo + 2.0 * PI)..]);
            consider(&members[..search(hi)]);
        } else if hi >= 2.0 * PI {
            consider(&members[search(lo)..]);
            consider(&members[..search(hi - 2.0 * PI)]);
        } else {
            consider(&members[search(lo)..search(hi)]);
        }
    };

    for (u, &home_band) in vertex_band.iter().enumerate() {
        for b in home_band..band_count {
            if let Some(theta) =
                angular_window(pre.cosh_r[u], pre.sinh_r[u], bounds[b], pre.cosh_radius)
            {
                scan(u, &bands[b], theta, b == home_band);
            }
        }
    }
    edges
}
