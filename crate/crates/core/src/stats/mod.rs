//! Degree-correlation statistics on a single graph: average nearest neighbor
//! degree a(k) and its band-averaged variant, degree-dependent clustering
//! c(k), the size-biased mean, contribution profiles, and log-log slope fits.

mod ensemble;

pub use ensemble::{ensemble_run, Binning, CurveKind, EnsembleRow, EnsembleSpec, EnsembleSummary};

use std::error::Error;
use std::fmt;

use crate::graph::SimpleGraph;
use crate::sampling::DomainError;

/// One row of an a(k) curve: `value = a_eps(k)` computed over `count`
/// vertices whose degree lies within `eps` of `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnndPoint {
    pub k: u32,
    pub count: u64,
    pub eps: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AnndCurve {
    pub points: Vec<AnndPoint>,
}

impl AnndCurve {
    pub fn value_at(&self, k: u32) -> Option<f64> {
        self.points
            .iter()
            .find(|p| p.k == k)
            .map(|p| p.value)
    }
}

/// How to pick the averaging band around k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonRule {
    Fixed(f64),
    /// Smallest grid epsilon (step 0.01) whose band holds at least `m_min`
    /// vertices, capped at `eps_cap`.
    Auto { m_min: u64, eps_cap: f64 },
}

impl Default for EpsilonRule {
    fn default() -> Self {
        EpsilonRule::Auto {
            m_min: 20,
            eps_cap: 0.25,
        }
    }
}

/// Result of one band evaluation: either a value over a non-empty band or an
/// explicit empty marker (never a division by zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnndBand {
    Band { value: f64, size: u64, eps: f64 },
    Empty { eps: f64 },
}

impl AnndBand {
    pub fn value(&self) -> Option<f64> {
        match self {
            AnndBand::Band { value, .. } => Some(*value),
            AnndBand::Empty { .. } => None,
        }
    }
}

/// Per-degree aggregates with prefix sums, so any degree band [lo, hi] is an
/// O(1) query. `ssum` aggregates each vertex's total neighbor degree.
pub(crate) struct DegreeAggregates {
    max_degree: u32,
    count_prefix: Vec<u64>,
    ssum_prefix: Vec<u64>,
}

impl DegreeAggregates {
    pub(crate) fn new(g: &SimpleGraph) -> Self {
        let sums = neighbor_degree_sums(g);
        let max_degree = g.max_degree();
        let mut count = vec![0u64; max_degree as usize + 1];
        let mut ssum = vec![0u64; max_degree as usize + 1];
        for (v, &d) in g.degrees().iter().enumerate() {
            count[d as usize] += 1;
            ssum[d as usize] += sums[v];
        }
        let mut count_prefix = vec![0u64; count.len() + 1];
        let mut ssum_prefix = vec![0u64; ssum.len() + 1];
        for i in 0..count.len() {
            count_prefix[i + 1] = count_prefix[i] + count[i];
            ssum_prefix[i + 1] = ssum_prefix[i] + ssum[i];
        }
        DegreeAggregates {
            max_degree,
            count_prefix,
            ssum_prefix,
        }
    }

    pub(crate) fn max_degree(&self) -> u32 {
        self.max_degree
    }

    fn degree_class(&self, k: u32) -> (u64, u64) {
        self.range(k, k)
    }

    /// Vertices and neighbor-degree mass with degree in `[lo, hi]`.
    fn range(&self, lo: u32, hi: u32) -> (u64, u64) {
        if lo > self.max_degree {
            return (0, 0);
        }
        let hi = hi.min(self.max_degree) as usize;
        let lo = lo as usize;
        (
            self.count_prefix[hi + 1] - self.count_prefix[lo],
            self.ssum_prefix[hi + 1] - self.ssum_prefix[lo],
        )
    }

    /// Band `[k(1-eps), k(1+eps)]` intersected with the integers.
    pub(crate) fn band(&self, k: u32, eps: f64) -> (u64, u64) {
        let lo_f = k as f64 * (1.0 - eps);
        let hi_f = k as f64 * (1.0 + eps);
        let lo = (lo_f - 1e-9).ceil().max(0.0) as u32;
        let hi_f = (hi_f + 1e-9).floor();
        if hi_f < lo as f64 {
            return (0, 0);
        }
        self.range(lo, hi_f.min(u32::MAX as f64) as u32)
    }

    pub(crate) fn resolve_eps(&self, k: u32, rule: EpsilonRule) -> f64 {
        match rule {
            EpsilonRule::Fixed(eps) => eps,
            EpsilonRule::Auto { m_min, eps_cap } => {
                let steps = (eps_cap / 0.01 + 1e-9).floor() as u32;
                for j in 0..=steps {
                    let eps = j as f64 * 0.01;
                    if self.band(k, eps).0 >= m_min {
                        return eps;
                    }
                }
                eps_cap
            }
        }
    }

    pub(crate) fn band_value(&self, k: u32, rule: EpsilonRule) -> AnndBand {
        let eps = self.resolve_eps(k, rule);
        let (size, mass) = self.band(k, eps);
        if size == 0 {
            AnndBand::Empty { eps }
        } else {
            AnndBand::Band {
                value: mass as f64 / (k as f64 * size as f64),
                size,
                eps,
            }
        }
    }
}

/// `S_v = sum of deg(j) over neighbors j of v`, the inner sum of a(k).
pub fn neighbor_degree_sums(g: &SimpleGraph) -> Vec<u64> {
    let mut sums = vec![0u64; g.vertex_count()];
    for (u, v) in g.edges() {
        sums[u as usize] += g.degree(v) as u64;
        sums[v as usize] += g.degree(u) as u64;
    }
    sums
}

/// Average nearest neighbor degree per exact degree class:
/// `a(k) = (1 / (k N_k)) * sum over degree-k vertices of their neighbors'
/// degrees`, one row per k with `N_k >= 1`.
pub fn annd_curve(g: &SimpleGraph) -> AnndCurve {
    let agg = DegreeAggregates::new(g);
    let mut points = Vec::new();
    for k in 1..=agg.max_degree() {
        let (count, mass) = agg.degree_class(k);
        if count > 0 {
            points.push(AnndPoint {
                k,
                count,
                eps: 0.0,
                value: mass as f64 / (k as f64 * count as f64),
            });
        }
    }
    AnndCurve { points }
}

/// Band-averaged a(k) at one k.
pub fn annd_band(g: &SimpleGraph, k: u32, rule: EpsilonRule) -> AnndBand {
    DegreeAggregates::new(g).band_value(k, rule)
}

/// The banded curve over a k grid; empty bands are omitted.
pub fn annd_banded_curve(g: &SimpleGraph, rule: EpsilonRule, ks: &[u32]) -> AnndCurve {
    let agg = DegreeAggregates::new(g);
    let mut points = Vec::new();
    for &k in ks {
        if k == 0 {
            continue;
        }
        if let AnndBand::Band { value, size, eps } = agg.band_value(k, rule) {
            points.push(AnndPoint {
                k,
                count: size,
                eps,
                value,
            });
        }
    }
    AnndCurve { points }
}

/// Smallest grid epsilon whose band at k holds at least `m_min` vertices.
pub fn epsilon_rule_auto(g: &SimpleGraph, k: u32, m_min: u64, eps_cap: f64) -> f64 {
    DegreeAggregates::new(g).resolve_eps(k, EpsilonRule::Auto { m_min, eps_cap })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringPoint {
    pub k: u32,
    pub count: u64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClusteringCurve {
    pub points: Vec<ClusteringPoint>,
}

impl ClusteringCurve {
    pub fn value_at(&self, k: u32) -> Option<f64> {
        self.points.iter().find(|p| p.k == k).map(|p| p.value)
    }
}

/// Triangles through each vertex, by merge-intersection of sorted neighbor
/// lists over every edge.
pub fn local_triangle_counts(g: &SimpleGraph) -> Vec<u64> {
    let mut twice = vec![0u64; g.vertex_count()];
    for (u, v) in g.edges() {
        let common = sorted_intersection_size(g.neighbors(u), g.neighbors(v));
        twice[u as usize] += common;
        twice[v as usize] += common;
    }
    // every triangle at v is reached via two of its incident edges
    for t in &mut twice {
        debug_assert!(*t % 2 == 0);
        *t /= 2;
    }
    twice
}

fn sorted_intersection_size(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Local clustering coefficient per vertex: `2 T_v / (d (d - 1))`, zero for
/// degrees below 2.
pub fn local_clustering(g: &SimpleGraph) -> Vec<f64> {
    local_triangle_counts(g)
        .iter()
        .zip(g.degrees())
        .map(|(&t, &d)| {
            if d < 2 {
                0.0
            } else {
                2.0 * t as f64 / (d as f64 * (d as f64 - 1.0))
            }
        })
        .collect()
}

/// Mean local clustering per degree class, `c(k)` for k >= 2.
pub fn clustering_curve(g: &SimpleGraph) -> ClusteringCurve {
    let coefficients = local_clustering(g);
    let max_degree = g.max_degree();
    let mut count = vec![0u64; max_degree as usize + 1];
    let mut total = vec![0f64; max_degree as usize + 1];
    for (v, &d) in g.degrees().iter().enumerate() {
        count[d as usize] += 1;
        total[d as usize] += coefficients[v];
    }
    let points = (2..=max_degree)
        .filter(|&k| count[k as usize] > 0)
        .map(|k| ClusteringPoint {
            k,
            count: count[k as usize],
            value: total[k as usize] / count[k as usize] as f64,
        })
        .collect();
    ClusteringCurve { points }
}

/// Mean of the size-biased degree distribution, `sum(D_i^2) / L_n`. This is
/// the value the low-k plateau of a(k) sits on.
pub fn size_biased_mean(degrees: &[u64], half_edge_total: u64) -> Result<f64, DomainError> {
    if half_edge_total == 0 {
        return Err(DomainError::new(
            "size-biased mean needs a positive half-edge total",
        ));
    }
    let square_sum: u128 = degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
    Ok(square_sum as f64 / half_edge_total as f64)
}

/// Share of a_eps(k) neighbor-degree mass contributed by neighbors with
/// degree inside `[delta L / k, L / (delta k)]`, per requested delta.
#[derive(Debug, Clone, PartialEq)]
pub struct ContributionShare {
    pub delta: f64,
    pub inside: f64,
    pub outside: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContributionProfile {
    pub k: u32,
    pub eps: f64,
    pub band_size: u64,
    pub shares: Vec<ContributionShare>,
}

/// Splits the double sum behind a_eps(k) by neighbor degree band around
/// `L / k` (with `L` the graph's degree sum standing in for mu times n).
/// Returns `None` when the band is empty.
pub fn contribution_profile(
    g: &SimpleGraph,
    k: u32,
    rule: EpsilonRule,
    deltas: &[f64],
) -> Option<ContributionProfile> {
    let agg = DegreeAggregates::new(g);
    let eps = agg.resolve_eps(k, rule);
    let (band_size, _) = agg.band(k, eps);
    if band_size == 0 {
        return None;
    }
    let l: u64 = g.degrees().iter().map(|&d| d as u64).sum();
    let lo_d = ((k as f64 * (1.0 - eps)) - 1e-9).ceil().max(0.0) as u32;
    let hi_d = ((k as f64 * (1.0 + eps)) + 1e-9).floor() as u32;
    let mut total = 0u128;
    let mut inside: Vec<u128> = vec![0; deltas.len()];
    for (v, &d) in g.degrees().iter().enumerate() {
        if d < lo_d || d > hi_d {
            continue;
        }
        for &nbr in g.neighbors(v as u32) {
            let nd = g.degree(nbr) as f64;
            total += g.degree(nbr) as u128;
            for (i, &delta) in deltas.iter().enumerate() {
                let lo = delta * l as f64 / k as f64;
                let hi = l as f64 / (delta * k as f64);
                if nd >= lo && nd <= hi {
                    inside[i] += g.degree(nbr) as u128;
                }
            }
        }
    }
    let shares = deltas
        .iter()
        .zip(&inside)
        .map(|(&delta, &mass)| {
            let inside = if total == 0 {
                0.0
            } else {
                mass as f64 / total as f64
            };
            ContributionShare {
                delta,
                inside,
                outside: 1.0 - inside,
            }
        })
        .collect();
    Some(ContributionProfile {
        k,
        eps,
        band_size,
        shares,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum FitError {
    /// Fewer than three usable points in the window.
    InsufficientData { found: usize },
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::InsufficientData { found } => {
                write!(f, "log-log fit needs at least 3 points, found {found}")
            }
        }
    }
}

impl Error for FitError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

/// Ordinary least squares of `ln value` on `ln k`, restricted to
/// `k in [k_lo, k_hi]` and positive values.
pub fn fit_loglog_slope(
    points: &[(f64, f64)],
    k_lo: f64,
    k_hi: f64,
) -> Result<SlopeFit, FitError> {
    let data: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(k, v)| k >= k_lo && k <= k_hi && v > 0.0 && k > 0.0)
        .map(|&(k, v)| (k.ln(), v.ln()))
        .collect();
    if data.len() < 3 {
        return Err(FitError::InsufficientData { found: data.len() });
    }
    let n = data.len() as f64;
    let mean_x = data.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = data.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = data.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = data.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = data.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = data
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let r_squared = if ss_tot <= f64::EPSILON {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(SlopeFit {
        slope,
        intercept,
        r_squared,
        points_used: data.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_simple_graph;
    use proptest::prelude::*;

    fn star(leaves: u32) -> SimpleGraph {
        let edges: Vec<(u32, u32)> = (1..=leaves).map(|v| (0, v)).collect();
        build_simple_graph(leaves as usize + 1, &edges).unwrap()
    }

    #[test]
    fn annd_star_and_path() {
        let g = star(4);
        let curve = annd_curve(&g);
        assert_eq!(curve.value_at(1), Some(4.0));
        assert_eq!(curve.value_at(4), Some(1.0));

        let path = build_simple_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let curve = annd_curve(&path);
        assert_eq!(curve.value_at(1), Some(2.0));
        assert_eq!(curve.value_at(2), Some(1.0));
    }

    #[test]
    fn annd_regular_graph_is_identity() {
        // 3-regular: K4
        let g = build_simple_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(annd_curve(&g).value_at(3), Some(3.0));
    }

    #[test]
    fn band_at_zero_eps_matches_curve() {
        let g = star(4);
        match annd_band(&g, 4, EpsilonRule::Fixed(0.0)) {
            AnndBand::Band { value, size, eps } => {
                assert_eq!(value, 1.0);
                assert_eq!(size, 1);
                assert_eq!(eps, 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn band_widening_covers_neighbors() {
        // path 0-1-2 plus pendant on 2: degrees (1, 2, 2, 1)
        let g = build_simple_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        // k = 2, eps = 0.6 -> band [0.8, 3.2] includes all four vertices.
        match annd_band(&g, 2, EpsilonRule::Fixed(0.6)) {
            AnndBand::Band { value, size, .. } => {
                assert_eq!(size, 4);
                // by hand: S = (2) + (1+2) + (2+1) + (2) = 10; a = 10 / (2*4)
                assert!((value - 10.0 / 8.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn band_beyond_max_degree_is_empty() {
        let g = star(4);
        match annd_band(&g, 50, EpsilonRule::Auto { m_min: 20, eps_cap: 0.25 }) {
            AnndBand::Empty { eps } => assert_eq!(eps, 0.25),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn auto_eps_examples() {
        let g = star(30);
        // k = 1 has 30 vertices, already >= m_min
        assert_eq!(epsilon_rule_auto(&g, 1, 20, 0.25), 0.0);
        // k = 29 absent; 30 is within 4%
        assert_eq!(epsilon_rule_auto(&g, 29, 1, 0.25), 0.04);
        let empty = build_simple_graph(3, &[]).unwrap();
        assert_eq!(epsilon_rule_auto(&empty, 5, 1, 0.25), 0.25);
    }

    #[test]
    fn clustering_examples() {
        let triangle = build_simple_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(clustering_curve(&triangle).value_at(2), Some(1.0));

        let g = star(4);
        assert_eq!(clustering_curve(&g).value_at(4), Some(0.0));

        // K4 minus edge {2,3} keeps triangles {0,1,2} and {0,1,3}: each
        // degree-3 vertex sits on both, each degree-2 vertex on one.
        let g = build_simple_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let curve = clustering_curve(&g);
        assert!((curve.value_at(3).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(curve.value_at(2), Some(1.0));
    }

    #[test]
    fn size_biased_mean_examples() {
        assert_eq!(size_biased_mean(&[1, 1], 2).unwrap(), 1.0);
        assert!((size_biased_mean(&[1, 2, 3], 6).unwrap() - 14.0 / 6.0).abs() < 1e-12);
        assert!(size_biased_mean(&[], 0).is_err());
    }

    #[test]
    fn contribution_shares_partition() {
        let g = star(6);
        let profile = contribution_profile(
            &g,
            1,
            EpsilonRule::Fixed(0.0),
            &[0.5, 0.1, 1e-6],
        )
        .unwrap();
        for share in &profile.shares {
            assert!((share.inside + share.outside - 1.0).abs() < 1e-12);
        }
        // delta -> 0 widens the band to everything
        assert!((profile.shares.last().unwrap().inside - 1.0).abs() < 1e-12);
        // empty band
        assert!(contribution_profile(&g, 40, EpsilonRule::Fixed(0.0), &[0.1]).is_none());
    }

    #[test]
    fn slope_fit_on_exact_power_law() {
        let points: Vec<(f64, f64)> = (1..=40)
            .map(|k| (k as f64, 7.0 * (k as f64).powf(-0.5)))
            .collect();
        let fit = fit_loglog_slope(&points, 1.0, 40.0).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-12);
        assert!((fit.intercept - 7f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);

        let flat: Vec<(f64, f64)> = (1..=10).map(|k| (k as f64, 3.0)).collect();
        let fit = fit_loglog_slope(&flat, 1.0, 10.0).unwrap();
        assert!(fit.slope.abs() < 1e-12);

        assert!(matches!(
            fit_loglog_slope(&points, 100.0, 200.0),
            Err(FitError::InsufficientData { found: 0 })
        ));
    }

    fn arbitrary_graph() -> impl Strategy<Value = SimpleGraph> {
        (2usize..20).prop_flat_map(|n| {
            let edge = (0..n as u32, 0..n as u32);
            proptest::collection::vec(edge, 0..50)
                .prop_map(move |raw| build_simple_graph(n, &raw).unwrap())
        })
    }

    proptest! {
        #[test]
        fn annd_weighted_sum_identity(g in arbitrary_graph()) {
            // sum_k k N_k a(k) equals the degree-weighted edge sum, exactly
            // as integers before any division.
            let sums = neighbor_degree_sums(&g);
            let total: u64 = sums.iter().sum();
            let edge_sum: u64 = g
                .edges()
                .map(|(u, v)| g.degree(u) as u64 + g.degree(v) as u64)
                .sum();
            prop_assert_eq!(total, edge_sum);

            let curve = annd_curve(&g);
            let weighted: f64 = curve
                .points
                .iter()
                .map(|p| p.k as f64 * p.count as f64 * p.value)
                .sum();
            prop_assert!((weighted - edge_sum as f64).abs() < 1e-6);
        }

        #[test]
        fn annd_bounds_and_band_consistency(g in arbitrary_graph()) {
            let curve = annd_curve(&g);
            let max_degree = g.max_degree() as f64;
            for p in &curve.points {
                prop_assert!(p.value >= 1.0 - 1e-12);
                prop_assert!(p.value <= max_degree + 1e-12);
                match annd_band(&g, p.k, EpsilonRule::Fixed(0.0)) {
                    AnndBand::Band { value, size, .. } => {
                        prop_assert_eq!(value, p.value);
                        prop_assert_eq!(size, p.count);
                    }
                    AnndBand::Empty { .. } => prop_assert!(false, "band empty at populated k"),
                }
            }
        }

        #[test]
        fn clustering_in_unit_interval_and_integer_triangles(g in arbitrary_graph()) {
            let curve = clustering_curve(&g);
            for p in &curve.points {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&p.value));
                // c(k) * k (k-1) * N_k / 2 recovers an integer triangle total
                let total = p.value * p.k as f64 * (p.k as f64 - 1.0) * p.count as f64 / 2.0;
                prop_assert!((total - total.round()).abs() < 1e-6);
            }
        }
    }
}
