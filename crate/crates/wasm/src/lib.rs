//! Browser bindings: three interactive operations over the core crate, each
//! returning a JSON payload the demo page plots on a log-log canvas.
//!
//! Sizes are capped so a misclick cannot freeze the tab; the CLI is the tool
//! for larger runs.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use nullmodel::models::{
    generate_ecm, generate_hrg, generate_irg, HrgStrategy, IrgStrategy, ModelSpec,
};
use nullmodel::sampling::{HrgParams, PowerLawSpec, SeedSpec};
use nullmodel::stats::{
    annd_banded_curve, ensemble_run, size_biased_mean, Binning, CurveKind, EnsembleSpec,
    EpsilonRule,
};
use nullmodel::theory::{predict_ecm, predict_hrg, predict_irg, TheoryPrediction};

const MAX_N: usize = 60_000;
const MAX_REALIZATIONS: u32 = 64;

#[derive(Serialize)]
struct TheoryPayload {
    model: String,
    n: usize,
    tau: f64,
    threshold_k: f64,
    cutoff_k: f64,
    plateau_value: f64,
    plateau_prefactor: f64,
    stable_alpha: f64,
    tail_constant: f64,
    tail_exponent: f64,
    /// (k, value) samples of the piecewise prediction, log-spaced.
    curve: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct CurvePayload {
    model: String,
    n: usize,
    seed: u64,
    stream: u64,
    edges: usize,
    max_degree: u32,
    size_biased_mean: f64,
    /// Rows (k, count, eps, value) of the banded a(k) curve.
    annd: Vec<(u32, u64, f64, f64)>,
}

#[derive(Serialize)]
struct EnsemblePayload {
    model: String,
    n: usize,
    realizations: u32,
    /// Rows (k, count, mean, median, q25, q75).
    rows: Vec<(f64, usize, f64, f64, f64, f64)>,
}

fn parse_model(
    model: &str,
    n: usize,
    tau: f64,
    nu: f64,
) -> Result<(ModelSpec, TheoryPrediction), String> {
    if !(2..=MAX_N).contains(&n) {
        return Err(format!("n must lie in [2, {MAX_N}] for the demo"));
    }
    match model {
        "ecm" => {
            let law = PowerLawSpec::new(tau, 1).map_err(|e| e.to_string())?;
            Ok((
                ModelSpec::Ecm { law, n },
                predict_ecm(n, &law).map_err(|e| e.to_string())?,
            ))
        }
        "irg" => {
            let law = PowerLawSpec::new(tau, 1).map_err(|e| e.to_string())?;
            Ok((
                ModelSpec::Irg {
                    law,
                    n,
                    strategy: IrgStrategy::Skipping,
                },
                predict_irg(n, &law).map_err(|e| e.to_string())?,
            ))
        }
        "hrg" => {
            let params = HrgParams::new(n, tau, nu).map_err(|e| e.to_string())?;
            Ok((
                ModelSpec::Hrg {
                    params,
                    strategy: HrgStrategy::Band,
                },
                predict_hrg(&params).map_err(|e| e.to_string())?,
            ))
        }
        other => Err(format!("unknown model {other:?} (expected ecm, irg or hrg)")),
    }
}

fn log_spaced_grid(hi: f64) -> Vec<f64> {
    let points = 120;
    (0..=points)
        .map(|i| 10f64.powf(hi.log10() * i as f64 / points as f64))
        .collect()
}

pub fn theory_payload(model: &str, n: usize, tau: f64, nu: f64) -> Result<String, String> {
    let (_, prediction) = parse_model(model, n, tau, nu)?;
    let curve = log_spaced_grid(prediction.cutoff_k)
        .into_iter()
        .map(|k| {
            let value = if k <= prediction.threshold_k {
                prediction.plateau_value()
            } else {
                prediction.tail_value(k)
            };
            (k, value)
        })
        .collect();
    let payload = TheoryPayload {
        model: model.to_string(),
        n,
        tau,
        threshold_k: prediction.threshold_k,
        cutoff_k: prediction.cutoff_k,
        plateau_value: prediction.plateau_value(),
        plateau_prefactor: prediction.plateau_prefactor,
        stable_alpha: prediction.stable_alpha,
        tail_constant: prediction.tail_constant,
        tail_exponent: prediction.tail_exponent,
        curve,
    };
    serde_json::to_string(&payload).map_err(|e| e.to_string())
}

pub fn simulate_payload(
    model: &str,
    n: usize,
    tau: f64,
    nu: f64,
    seed: u64,
    stream: u64,
) -> Result<String, String> {
    let (spec, _) = parse_model(model, n, tau, nu)?;
    let seed_spec = SeedSpec::new(seed, stream);
    let (graph, biased_mean) = match &spec {
        ModelSpec::Ecm { law, n } => {
            let out = generate_ecm(law, *n, &seed_spec);
            let mean = size_biased_mean(&out.sampled_degrees, out.half_edge_total)
                .map_err(|e| e.to_string())?;
            (out.graph, mean)
        }
        ModelSpec::Irg { law, n, strategy } => {
            let out = generate_irg(law, *n, &seed_spec, *strategy);
            let total: u64 = out.weights.iter().sum();
            let mean = size_biased_mean(&out.weights, total).map_err(|e| e.to_string())?;
            (out.graph, mean)
        }
        ModelSpec::Hrg { params, strategy } => {
            let out = generate_hrg(params, &seed_spec, *strategy);
            let degrees: Vec<u64> = out.graph.degrees().iter().map(|&d| d as u64).collect();
            let total: u64 = degrees.iter().sum();
            let mean = size_biased_mean(&degrees, total).map_err(|e| e.to_string())?;
            (out.graph, mean)
        }
    };
    let ks: Vec<u32> = (1..=graph.max_degree()).collect();
    let curve = annd_banded_curve(&graph, EpsilonRule::default(), &ks);
    let payload = CurvePayload {
        model: model.to_string(),
        n,
        seed,
        stream,
        edges: graph.edge_count(),
        max_degree: graph.max_degree(),
        size_biased_mean: biased_mean,
        annd: curve
            .points
            .iter()
            .map(|p| (p.k, p.count, p.eps, p.value))
            .collect(),
    };
    serde_json::to_string(&payload).map_err(|e| e.to_string())
}

pub fn ensemble_payload(
    model: &str,
    n: usize,
    tau: f64,
    nu: f64,
    realizations: u32,
    seed: u64,
) -> Result<String, String> {
    if realizations == 0 || realizations > MAX_REALIZATIONS {
        return Err(format!(
            "realizations must lie in [1, {MAX_REALIZATIONS}] for the demo"
        ));
    }
    let (spec, _) = parse_model(model, n, tau, nu)?;
    let summary = ensemble_run(&EnsembleSpec {
        model: spec,
        realizations,
        master_seed: seed,
        curve: CurveKind::Annd {
            rule: EpsilonRule::default(),
        },
        binning: Binning::Geometric { bins_per_decade: 16 },
    });
    let payload = EnsemblePayload {
        model: model.to_string(),
        n,
        realizations,
        rows: summary
            .rows
            .iter()
            .map(|r| (r.k, r.count, r.mean, r.median, r.q25, r.q75))
            .collect(),
    };
    serde_json::to_string(&payload).map_err(|e| e.to_string())
}

/// Closed-form prediction for the chosen parameters: thresholds, plateau,
/// tail, and a log-spaced curve to draw.
#[wasm_bindgen]
pub fn theory_curve(model: &str, n: usize, tau: f64, nu: f64) -> Result<String, JsValue> {
    theory_payload(model, n, tau, nu).map_err(|e| JsValue::from_str(&e))
}

/// One seeded realization: banded a(k) rows plus the size-biased mean the
/// plateau should sit on.
#[wasm_bindgen]
pub fn simulate_annd(
    model: &str,
    n: usize,
    tau: f64,
    nu: f64,
    seed: u64,
    stream: u64,
) -> Result<String, JsValue> {
    simulate_payload(model, n, tau, nu, seed, stream).map_err(|e| JsValue::from_str(&e))
}

/// A small seeded ensemble: per-bin mean/median/quartiles of a(k).
#[wasm_bindgen]
pub fn ensemble_annd(
    model: &str,
    n: usize,
    tau: f64,
    nu: f64,
    realizations: u32,
    seed: u64,
) -> Result<String, JsValue> {
    ensemble_payload(model, n, tau, nu, realizations, seed).map_err(|e| JsValue::from_str(&e))
}
