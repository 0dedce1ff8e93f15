//! Seeded ensembles: generate R independent realizations (stream ids
//! 0..R-1), compute a curve per realization, and aggregate per degree class
//! or geometric bin. The reduction is order-free, so worker count never
//! changes the output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use std::collections::BTreeMap;

use crate::models::ModelSpec;
use crate::sampling::SeedSpec;
use crate::stats::{local_clustering, DegreeAggregates, EpsilonRule};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    Annd { rule: EpsilonRule },
    Clustering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binning {
    /// One row per exact degree k.
    Raw,
    /// Geometric bins, `bins_per_decade` per factor of ten, centered at
    /// `10^((idx + 0.5) / bins_per_decade)`.
    Geometric { bins_per_decade: u32 },
}

impl Binning {
    fn key_of_degree(&self, d: u32) -> u64 {
        match self {
            Binning::Raw => d as u64,
            Binning::Geometric { bins_per_decade } => {
                ((d as f64).log10() * *bins_per_decade as f64 + 1e-9).floor() as u64
            }
        }
    }

    fn center(&self, key: u64) -> f64 {
        match self {
            Binning::Raw => key as f64,
            Binning::Geometric { bins_per_decade } => {
                10f64.powf((key as f64 + 0.5) / *bins_per_decade as f64)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub model: ModelSpec,
    pub realizations: u32,
    pub master_seed: u64,
    pub curve: CurveKind,
    pub binning: Binning,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleRow {
    /// Degree k (raw binning) or bin center.
    pub k: f64,
    /// Number of realizations contributing a value here.
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    pub std_dev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub realizations: u32,
    pub binning: Binning,
    pub rows: Vec<EnsembleRow>,
}

impl EnsembleSummary {
    pub fn row_at(&self, k: f64) -> Option<&EnsembleRow> {
        self.rows.iter().find(|r| (r.k - k).abs() < 1e-9)
    }

    /// `(k, median)` pairs, the usual input to the slope fit.
    pub fn median_points(&self) -> Vec<(f64, f64)> {
        self.rows.iter().map(|r| (r.k, r.median)).collect()
    }
}

/// The per-realization curve as `(bin key, value)` pairs, ascending in key.
pub fn realization_curve(
    model: &ModelSpec,
    curve: CurveKind,
    binning: Binning,
    seed: &SeedSpec,
) -> Vec<(u64, f64)> {
    let graph = model.generate_graph(seed);
    match curve {
        CurveKind::Annd { rule } => {
            let agg = DegreeAggregates::new(&graph);
            match binning {
                Binning::Raw => {
                    let mut out = Vec::new();
                    for k in 1..=agg.max_degree() {
                        if let crate::stats::AnndBand::Band { value, .. } =
                            agg.band_value(k, rule)
                        {
                            out.push((k as u64, value));
                        }
                    }
                    out
                }
                Binning::Geometric { .. } => {
                    // Bin membership by vertex degree; the statistic is the
                    // band average with the bin center playing the role of k.
                    let sums = crate::stats::neighbor_degree_sums(&graph);
                    let mut count: BTreeMap<u64, u64> = BTreeMap::new();
                    let mut mass: BTreeMap<u64, u64> = BTreeMap::new();
                    for (v, &d) in graph.degrees().iter().enumerate() {
                        if d == 0 {
                            continue;
                        }
                        let key = binning.key_of_degree(d);
                        *count.entry(key).or_insert(0) += 1;
                        *mass.entry(key).or_insert(0) += sums[v];
                    }
                    count
                        .into_iter()
                        .map(|(key, c)| {
                            let m = mass[&key];
                            (key, m as f64 / (binning.center(key) * c as f64))
                        })
                        .collect()
                }
            }
        }
        CurveKind::Clustering => {
            let coefficients = local_clustering(&graph);
            let mut count: BTreeMap<u64, u64> = BTreeMap::new();
            let mut total: BTreeMap<u64, f64> = BTreeMap::new();
            for (v, &d) in graph.degrees().iter().enumerate() {
                if d < 2 {
                    continue;
                }
                let key = binning.key_of_degree(d);
                *count.entry(key).or_insert(0) += 1;
                *total.entry(key).or_insert(0.0) += coefficients[v];
            }
            count
                .into_iter()
                .map(|(key, c)| (key, total[&key] / c as f64))
                .collect()
        }
    }
}

/// Runs the full ensemble. Deterministic for a fixed spec: realization r uses
/// stream id r, and aggregation does not depend on completion order.
pub fn ensemble_run(spec: &EnsembleSpec) -> EnsembleSummary {
    let indices: Vec<u64> = (0..spec.realizations as u64).collect();
    let per_realization: Vec<Vec<(u64, f64)>> = {
        #[cfg(feature = "parallel")]
        {
            indices
                .par_iter()
                .map(|&r| {
                    realization_curve(
                        &spec.model,
                        spec.curve,
                        spec.binning,
                        &SeedSpec::new(spec.master_seed, r),
                    )
                })
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            indices
                .iter()
                .map(|&r| {
                    realization_curve(
                        &spec.model,
                        spec.curve,
                        spec.binning,
                        &SeedSpec::new(spec.master_seed, r),
                    )
                })
                .collect()
        }
    };

    let mut by_key: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for curve in per_realization {
        for (key, value) in curve {
            by_key.entry(key).or_default().push(value);
        }
    }

    let rows = by_key
        .into_iter()
        .map(|(key, mut values)| {
            values.sort_by(f64::total_cmp);
            let count = values.len();
            let mean = values.iter().sum::<f64>() / count as f64;
            let std_dev = if count < 2 {
                0.0
            } else {
                (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count as f64 - 1.0))
                    .sqrt()
            };
            EnsembleRow {
                k: spec.binning.center(key),
                count,
                mean,
                median: quantile_sorted(&values, 0.5),
                q25: quantile_sorted(&values, 0.25),
                q75: quantile_sorted(&values, 0.75),
                std_dev,
            }
        })
        .collect();
    EnsembleSummary {
        realizations: spec.realizations,
        binning: spec.binning,
        rows,
    }
}

/// Linear-interpolated quantile of a sorted slice (median of two middle
/// values for even counts).
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = (sorted.len() - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = pos - lo as f64;
        sorted[lo] * (1.0 - frac) + sorted[hi] * frac
    }
}
