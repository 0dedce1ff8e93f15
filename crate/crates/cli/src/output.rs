//! CSV and JSON emission. All writers are deterministic: fixed column order,
//! shortest-roundtrip float formatting, rows sorted by k.

use std::fs::File;
use std::io::{BufWriter, Write};

use serde::Serialize;

use nullmodel::stats::{AnndCurve, ClusteringCurve, EnsembleSummary};
use nullmodel::theory::TheoryPrediction;

use crate::CliError;

/// Opens the output target: a file path, or standard output for `-`/absent.
pub fn open_sink(path: Option<&str>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None | Some("-") => Ok(Box::new(std::io::stdout().lock())),
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::io(format!("cannot create {path}: {e}")))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

pub fn write_annd_csv(sink: &mut dyn Write, curve: &AnndCurve) -> Result<(), CliError> {
    writeln!(sink, "k,count,eps,value").map_err(CliError::from_write)?;
    for p in &curve.points {
        writeln!(sink, "{},{},{},{}", p.k, p.count, p.eps, p.value).map_err(CliError::from_write)?;
    }
    Ok(())
}

pub fn write_clustering_csv(sink: &mut dyn Write, curve: &ClusteringCurve) -> Result<(), CliError> {
    writeln!(sink, "k,count,eps,value").map_err(CliError::from_write)?;
    for p in &curve.points {
        writeln!(sink, "{},{},0,{}", p.k, p.count, p.value).map_err(CliError::from_write)?;
    }
    Ok(())
}

pub fn write_ensemble_csv(
    sink: &mut dyn Write,
    summary: &EnsembleSummary,
    overlay: Option<&TheoryPrediction>,
) -> Result<(), CliError> {
    if overlay.is_some() {
        writeln!(sink, "k,count,mean,median,q25,q75,std,pred_tail").map_err(CliError::from_write)?;
    } else {
        writeln!(sink, "k,count,mean,median,q25,q75,std").map_err(CliError::from_write)?;
    }
    for row in &summary.rows {
        match overlay {
            Some(prediction) => writeln!(
                sink,
                "{},{},{},{},{},{},{},{}",
                row.k,
                row.count,
                row.mean,
                row.median,
                row.q25,
                row.q75,
                row.std_dev,
                prediction.tail_value(row.k)
            )
            .map_err(CliError::from_write)?,
            None => writeln!(
                sink,
                "{},{},{},{},{},{},{}",
                row.k, row.count, row.mean, row.median, row.q25, row.q75, row.std_dev
            )
            .map_err(CliError::from_write)?,
        }
    }
    Ok(())
}

/// Sidecar metadata written next to a generated edge list.
#[derive(Debug, Serialize)]
pub struct GenerateSidecar {
    pub model: &'static str,
    pub n: usize,
    pub tau: f64,
    pub x_min: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    pub seed: u64,
    pub stream: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erased_degree_sum: Option<u64>,
    pub edges: usize,
}

/// Theory report: every predicted constant plus a short description of where
/// each number comes from.
#[derive(Debug, Serialize)]
pub struct TheoryReport {
    pub model: &'static str,
    pub n: usize,
    pub tau: f64,
    pub c: f64,
    pub mu: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    pub threshold_k: f64,
    pub cutoff_k: f64,
    pub plateau_prefactor: f64,
    pub plateau_scale: f64,
    pub stable_alpha: f64,
    pub tail_constant: f64,
    pub tail_scale_factor: f64,
    pub tail_exponent: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hrg_integral: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hrg_integral_tolerance: Option<f64>,
    pub provenance: Vec<ProvenanceEntry>,
}

#[derive(Debug, Serialize)]
pub struct ProvenanceEntry {
    pub field: &'static str,
    pub meaning: &'static str,
}

impl TheoryReport {
    pub fn from_prediction(prediction: &TheoryPrediction) -> Self {
        let mut provenance = vec![
            ProvenanceEntry {
                field: "threshold_k",
                meaning: "degree scale n^((tau-2)/(tau-1)) where a(k) leaves its plateau",
            },
            ProvenanceEntry {
                field: "cutoff_k",
                meaning: "natural maximum-degree scale n^(1/(tau-1)) of n power-law samples",
            },
            ProvenanceEntry {
                field: "plateau_prefactor",
                meaning: "deterministic prefactor of the plateau limit; the plateau height is \
                          prefactor * n^((3-tau)/(tau-1)) * S, with S a totally skewed stable \
                          variable of index stable_alpha varying across realizations",
            },
            ProvenanceEntry {
                field: "tail_constant",
                meaning: "limit of a(k) / (n^(3-tau) k^(tau-3)) in the decay regime \
                          threshold_k << k << cutoff_k",
            },
            ProvenanceEntry {
                field: "tail_exponent",
                meaning: "log-log slope tau - 3 of the decay regime",
            },
        ];
        if prediction.hrg_integral.is_some() {
            provenance.push(ProvenanceEntry {
                field: "hrg_integral",
                meaning: "kernel moment integral of x^(1-tau) min(acos(1-2x^2)/pi, 1) over \
                          (0, inf), entering the hyperbolic tail constant; adaptive quadrature \
                          at the reported absolute tolerance",
            });
        }
        TheoryReport {
            model: prediction.model.name(),
            n: prediction.n,
            tau: prediction.tau,
            c: prediction.c,
            mu: prediction.mu,
            nu: prediction.nu,
            threshold_k: prediction.threshold_k,
            cutoff_k: prediction.cutoff_k,
            plateau_prefactor: prediction.plateau_prefactor,
            plateau_scale: prediction.plateau_scale,
            stable_alpha: prediction.stable_alpha,
            tail_constant: prediction.tail_constant,
            tail_scale_factor: prediction.tail_scale_factor,
            tail_exponent: prediction.tail_exponent,
            hrg_integral: prediction.hrg_integral,
            hrg_integral_tolerance: prediction.hrg_integral_tolerance,
            provenance,
        }
    }
}

pub fn write_json<T: Serialize>(sink: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::io(format!("serialization failed: {e}")))?;
    writeln!(sink, "{text}").map_err(CliError::from_write)
}
