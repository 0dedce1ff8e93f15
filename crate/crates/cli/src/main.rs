//! `nullmodel`: generate scale-free null-model graphs and measure their
//! degree-correlation statistics.
//!
//! Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 domain error.

mod config;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nullmodel::graph::{build_simple_graph, read_edge_list, write_edge_list, SimpleGraph};
use nullmodel::models::ModelSpec;
use nullmodel::sampling::SeedSpec;
use nullmodel::stats::{
    annd_banded_curve, clustering_curve, ensemble_run, fit_loglog_slope, EnsembleSpec,
};

use config::{build_model_spec, build_prediction, EpsArg, ExperimentConfig, ModelName, StrategyName};
use output::{
    open_sink, write_annd_csv, write_clustering_csv, write_ensemble_csv, write_json,
    GenerateSidecar, TheoryReport,
};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Domain(String),
    /// Downstream closed the pipe; exit quietly like other line tools.
    BrokenPipe,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    fn io(message: impl Into<String>) -> Self {
        CliError::Io(message.into())
    }

    fn domain(error: impl fmt::Display) -> Self {
        CliError::Domain(error.to_string())
    }

    fn from_write(error: std::io::Error) -> Self {
        if error.kind() == std::io::ErrorKind::BrokenPipe {
            CliError::BrokenPipe
        } else {
            CliError::Io(format!("write failed: {error}"))
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Domain(_) => 4,
            CliError::BrokenPipe => 0,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::BrokenPipe => write!(f, "output pipe closed"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "nullmodel",
    about = "Scale-free random-graph null models and degree-correlation statistics",
    version
)]
struct Cli {
    /// Worker threads for ensemble runs (falls back to NULLMODEL_THREADS,
    /// then to the number of cores). Output is identical for any setting.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Null model to draw from.
    #[arg(long, value_enum)]
    model: ModelName,

    /// Number of vertices.
    #[arg(long)]
    n: usize,

    /// Power-law exponent, strictly between 2 and 3.
    #[arg(long)]
    tau: f64,

    /// Minimal degree/weight of the power law.
    #[arg(long, default_value_t = 1)]
    x_min: u32,

    /// Average-degree parameter of the hyperbolic model.
    #[arg(long)]
    nu: Option<f64>,

    /// Generation strategy (irg: naive|pruned|skipping, hrg: naive|band).
    #[arg(long, value_enum)]
    strategy: Option<StrategyName>,
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, CliError> {
        build_model_spec(self.model, self.n, self.tau, self.x_min, self.nu, self.strategy)
    }
}

#[derive(Args)]
struct EpsArgs {
    /// Band half-width rule: 'auto' or a fixed epsilon.
    #[arg(long, default_value = "auto")]
    eps: EpsArg,

    /// Minimal band occupancy targeted by the auto rule.
    #[arg(long, default_value_t = 20)]
    m_min: u64,

    /// Largest epsilon the auto rule may pick.
    #[arg(long, default_value_t = 0.25)]
    eps_cap: f64,
}

impl EpsArgs {
    fn rule(&self) -> Result<nullmodel::stats::EpsilonRule, CliError> {
        self.eps.rule(self.m_min, self.eps_cap)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate one realization and write it as an edge list plus a JSON
    /// sidecar with the generation parameters.
    Generate {
        #[command(flatten)]
        model: ModelArgs,

        /// Master seed.
        #[arg(long)]
        seed: u64,

        /// Stream (realization) index under the master seed.
        #[arg(long, default_value_t = 0)]
        stream: u64,

        /// Edge-list output path; the sidecar goes to `<out>.json`.
        #[arg(long)]
        out: String,
    },

    /// Average nearest neighbor degree curve of a graph file (CSV
    /// `k,count,eps,value`).
    Annd {
        /// Edge-list input path.
        #[arg(long)]
        input: String,

        #[command(flatten)]
        eps: EpsArgs,

        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<String>,
    },

    /// Degree-dependent local clustering curve c(k) of a graph file (CSV
    /// `k,count,eps,value`; eps is always 0).
    Clustering {
        /// Edge-list input path.
        #[arg(long)]
        input: String,

        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<String>,
    },

    /// Seeded ensemble of realizations, aggregated per degree class or
    /// geometric bin (CSV `k,count,mean,median,q25,q75,std`).
    Ensemble {
        /// JSON experiment file; exclusive with the inline flags.
        #[arg(long, conflicts_with_all = ["model", "n", "tau", "x_min", "nu", "strategy",
              "realizations", "seed", "stat", "eps", "m_min", "eps_cap", "binning",
              "bins_per_decade", "overlay", "out"])]
        config: Option<String>,

        #[command(flatten)]
        model: Option<ModelArgs>,

        /// Number of realizations.
        #[arg(long)]
        realizations: Option<u32>,

        /// Master seed; realization r uses stream id r.
        #[arg(long)]
        seed: Option<u64>,

        /// Which curve to aggregate.
        #[arg(long, value_enum, default_value = "annd")]
        stat: config::StatName,

        #[command(flatten)]
        eps: EpsArgs,

        /// Row grouping.
        #[arg(long, value_enum, default_value = "geometric")]
        binning: config::BinningName,

        #[arg(long, default_value_t = 16)]
        bins_per_decade: u32,

        /// Append the predicted decay-regime column `pred_tail`.
        #[arg(long, default_value_t = false)]
        overlay: bool,

        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<String>,
    },

    /// Closed-form predictions (thresholds, plateau and tail constants) as
    /// JSON.
    Theory {
        #[command(flatten)]
        model: ModelArgs,

        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<String>,
    },

    /// Ingest an external edge list and emit both statistics CSVs.
    Ingest {
        /// Edge-list input path (SNAP-style text).
        #[arg(long)]
        input: String,

        #[command(flatten)]
        eps: EpsArgs,

        /// ANND curve output path.
        #[arg(long)]
        out_annd: String,

        /// Clustering curve output path.
        #[arg(long)]
        out_clustering: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("NULLMODEL_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(threads) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("{error}");
            ExitCode::from(error.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            model,
            seed,
            stream,
            out,
        } => cmd_generate(model, seed, stream, &out),
        Command::Annd { input, eps, out } => {
            let graph = load_graph(&input)?;
            let rule = eps.rule()?;
            let ks: Vec<u32> = (1..=graph.max_degree()).collect();
            let curve = annd_banded_curve(&graph, rule, &ks);
            let mut sink = open_sink(out.as_deref())?;
            write_annd_csv(sink.as_mut(), &curve)
        }
        Command::Clustering { input, out } => {
            let graph = load_graph(&input)?;
            let curve = clustering_curve(&graph);
            let mut sink = open_sink(out.as_deref())?;
            write_clustering_csv(sink.as_mut(), &curve)
        }
        Command::Ensemble {
            config,
            model,
            realizations,
            seed,
            stat,
            eps,
            binning,
            bins_per_decade,
            overlay,
            out,
        } => {
            if let Some(path) = config {
                let config = ExperimentConfig::load(&path)?;
                if let Some(threads) = config.threads {
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(threads)
                        .build_global();
                }
                return cmd_ensemble(&config);
            }
            let model = model.ok_or_else(|| {
                CliError::config("ensemble needs either --config or the inline model flags")
            })?;
            let realizations = realizations
                .ok_or_else(|| CliError::config("--realizations is required"))?;
            let seed = seed.ok_or_else(|| CliError::config("--seed is required"))?;
            let config = ExperimentConfig {
                model: model.model,
                n: model.n,
                tau: model.tau,
                x_min: model.x_min,
                nu: model.nu,
                realizations,
                seed,
                stat,
                epsilon: match eps.eps {
                    EpsArg::Auto => serde_json::Value::String("auto".into()),
                    EpsArg::Fixed(v) => serde_json::json!(v),
                },
                m_min: eps.m_min,
                eps_cap: eps.eps_cap,
                binning,
                bins_per_decade,
                strategy: model.strategy,
                overlay,
                fit_window: None,
                out: out.unwrap_or_else(|| "-".into()),
                threads: None,
            };
            if config.realizations == 0 {
                return Err(CliError::config("realizations must be at least 1"));
            }
            cmd_ensemble(&config)
        }
        Command::Theory { model, out } => {
            let prediction =
                build_prediction(model.model, model.n, model.tau, model.x_min, model.nu)?;
            let report = TheoryReport::from_prediction(&prediction);
            let mut sink = open_sink(out.as_deref())?;
            write_json(sink.as_mut(), &report)
        }
        Command::Ingest {
            input,
            eps,
            out_annd,
            out_clustering,
        } => {
            let graph = load_graph(&input)?;
            let rule = eps.rule()?;
            let ks: Vec<u32> = (1..=graph.max_degree()).collect();
            let annd = annd_banded_curve(&graph, rule, &ks);
            let mut sink = open_sink(Some(&out_annd))?;
            write_annd_csv(sink.as_mut(), &annd)?;
            let clustering = clustering_curve(&graph);
            let mut sink = open_sink(Some(&out_clustering))?;
            write_clustering_csv(sink.as_mut(), &clustering)
        }
    }
}

fn load_graph(path: &str) -> Result<SimpleGraph, CliError> {
    let parsed = read_edge_list(path).map_err(|e| CliError::io(e.to_string()))?;
    build_simple_graph(parsed.n, &parsed.edges).map_err(|e| CliError::io(e.to_string()))
}

fn cmd_generate(model: ModelArgs, seed: u64, stream: u64, out: &str) -> Result<(), CliError> {
    let spec = model.spec()?;
    let seed_spec = SeedSpec::new(seed, stream);
    let (graph, l_n, erased_degree_sum) = match &spec {
        ModelSpec::Ecm { law, n } => {
            let outcome = nullmodel::models::generate_ecm(law, *n, &seed_spec);
            let erased = outcome.erased_degree_sum();
            (outcome.graph, Some(outcome.half_edge_total), Some(erased))
        }
        _ => (spec.generate_graph(&seed_spec), None, None),
    };
    write_edge_list(&graph, out).map_err(|e| CliError::io(format!("cannot write {out}: {e}")))?;
    let sidecar = GenerateSidecar {
        model: model.model.as_str(),
        n: model.n,
        tau: model.tau,
        x_min: model.x_min,
        nu: model.nu,
        seed,
        stream,
        l_n,
        erased_degree_sum,
        edges: graph.edge_count(),
    };
    let sidecar_path = format!("{out}.json");
    let mut sink = open_sink(Some(&sidecar_path))?;
    write_json(sink.as_mut(), &sidecar)
}

fn cmd_ensemble(config: &ExperimentConfig) -> Result<(), CliError> {
    let spec = EnsembleSpec {
        model: config.model_spec()?,
        realizations: config.realizations,
        master_seed: config.seed,
        curve: config.curve_kind()?,
        binning: config.binning_kind(),
    };
    let summary = ensemble_run(&spec);
    let overlay = if config.overlay {
        Some(config.prediction()?)
    } else {
        None
    };
    let mut sink = open_sink(Some(config.out.as_str()))?;
    write_ensemble_csv(sink.as_mut(), &summary, overlay.as_ref())?;
    drop(sink);
    if let Some([k_lo, k_hi]) = config.fit_window {
        let fit = fit_loglog_slope(&summary.median_points(), k_lo, k_hi)
            .map_err(CliError::domain)?;
        println!(
            "fit slope={} intercept={} r2={} points={}",
            fit.slope, fit.intercept, fit.r_squared, fit.points_used
        );
    }
    Ok(())
}
