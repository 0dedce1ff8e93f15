//! Experiment configuration: the JSON schema accepted by `ensemble --config`
//! and the shared translation from parameters to core model specs.

use serde::Deserialize;

use nullmodel::models::{HrgStrategy, IrgStrategy, ModelSpec};
use nullmodel::sampling::{HrgParams, PowerLawSpec};
use nullmodel::stats::{Binning, CurveKind, EpsilonRule};
use nullmodel::theory::{self, TheoryPrediction};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Ecm,
    Irg,
    Hrg,
}

impl ModelName {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::Ecm => "ecm",
            ModelName::Irg => "irg",
            ModelName::Hrg => "hrg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StatName {
    Annd,
    Clustering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BinningName {
    Raw,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StrategyName {
    Naive,
    Pruned,
    Skipping,
    Band,
}

/// Band rule as it appears on the command line: `auto` or a fixed epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsArg {
    Auto,
    Fixed(f64),
}

impl std::str::FromStr for EpsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            Ok(EpsArg::Auto)
        } else {
            s.parse::<f64>()
                .map(EpsArg::Fixed)
                .map_err(|_| format!("expected 'auto' or a number, got {s:?}"))
        }
    }
}

impl EpsArg {
    pub fn rule(self, m_min: u64, eps_cap: f64) -> Result<EpsilonRule, CliError> {
        match self {
            EpsArg::Auto => Ok(EpsilonRule::Auto { m_min, eps_cap }),
            EpsArg::Fixed(eps) => {
                if !(0.0..=1.0).contains(&eps) {
                    return Err(CliError::config(format!(
                        "fixed epsilon must lie in [0, 1], got {eps}"
                    )));
                }
                Ok(EpsilonRule::Fixed(eps))
            }
        }
    }
}

fn default_x_min() -> u32 {
    1
}

fn default_stat() -> StatName {
    StatName::Annd
}

fn default_epsilon() -> serde_json::Value {
    serde_json::Value::String("auto".into())
}

fn default_m_min() -> u64 {
    20
}

fn default_eps_cap() -> f64 {
    0.25
}

fn default_binning() -> BinningName {
    BinningName::Geometric
}

fn default_bins_per_decade() -> u32 {
    16
}

/// The experiment file schema. Unknown keys are rejected.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelName,
    pub n: usize,
    pub tau: f64,
    #[serde(default = "default_x_min")]
    pub x_min: u32,
    #[serde(default)]
    pub nu: Option<f64>,
    pub realizations: u32,
    pub seed: u64,
    #[serde(default = "default_stat")]
    pub stat: StatName,
    /// "auto" or a fixed number.
    #[serde(default = "default_epsilon")]
    pub epsilon: serde_json::Value,
    #[serde(default = "default_m_min")]
    pub m_min: u64,
    #[serde(default = "default_eps_cap")]
    pub eps_cap: f64,
    #[serde(default = "default_binning")]
    pub binning: BinningName,
    #[serde(default = "default_bins_per_decade")]
    pub bins_per_decade: u32,
    #[serde(default)]
    pub strategy: Option<StrategyName>,
    #[serde(default)]
    pub overlay: bool,
    /// Optional `[k_lo, k_hi]` window; when present the median curve's
    /// log-log slope over the window is reported on standard output.
    #[serde(default)]
    pub fit_window: Option<[f64; 2]>,
    pub out: String,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read config {path}: {e}")))?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("invalid config {path}: {e}")))?;
        if config.realizations == 0 {
            return Err(CliError::config("realizations must be at least 1"));
        }
        Ok(config)
    }

    pub fn eps_arg(&self) -> Result<EpsArg, CliError> {
        match &self.epsilon {
            serde_json::Value::String(s) => s
                .parse::<EpsArg>()
                .map_err(CliError::config),
            serde_json::Value::Number(number) => number
                .as_f64()
                .map(EpsArg::Fixed)
                .ok_or_else(|| CliError::config("epsilon must be a float or \"auto\"")),
            other => Err(CliError::config(format!(
                "epsilon must be a float or \"auto\", got {other}"
            ))),
        }
    }

    pub fn curve_kind(&self) -> Result<CurveKind, CliError> {
        Ok(match self.stat {
            StatName::Annd => CurveKind::Annd {
                rule: self.eps_arg()?.rule(self.m_min, self.eps_cap)?,
            },
            StatName::Clustering => CurveKind::Clustering,
        })
    }

    pub fn binning_kind(&self) -> Binning {
        match self.binning {
            BinningName::Raw => Binning::Raw,
            BinningName::Geometric => Binning::Geometric {
                bins_per_decade: self.bins_per_decade,
            },
        }
    }

    pub fn model_spec(&self) -> Result<ModelSpec, CliError> {
        build_model_spec(self.model, self.n, self.tau, self.x_min, self.nu, self.strategy)
    }

    pub fn prediction(&self) -> Result<TheoryPrediction, CliError> {
        build_prediction(self.model, self.n, self.tau, self.x_min, self.nu)
    }
}

pub fn build_model_spec(
    model: ModelName,
    n: usize,
    tau: f64,
    x_min: u32,
    nu: Option<f64>,
    strategy: Option<StrategyName>,
) -> Result<ModelSpec, CliError> {
    if n < 2 {
        return Err(CliError::config("n must be at least 2"));
    }
    match model {
        ModelName::Ecm => {
            let law = PowerLawSpec::new(tau, x_min).map_err(CliError::domain)?;
            if strategy.is_some() {
                return Err(CliError::config(
                    "the erased configuration model takes no strategy",
                ));
            }
            Ok(ModelSpec::Ecm { law, n })
        }
        ModelName::Irg => {
            let law = PowerLawSpec::new(tau, x_min).map_err(CliError::domain)?;
            let strategy = match strategy {
                None | Some(StrategyName::Skipping) => IrgStrategy::Skipping,
                Some(StrategyName::Naive) => IrgStrategy::Naive,
                Some(StrategyName::Pruned) => IrgStrategy::Pruned,
                Some(StrategyName::Band) => {
                    return Err(CliError::config("band is a hyperbolic-model strategy"))
                }
            };
            Ok(ModelSpec::Irg { law, n, strategy })
        }
        ModelName::Hrg => {
            let nu = nu.ok_or_else(|| CliError::config("the hyperbolic model requires --nu"))?;
            let params = HrgParams::new(n, tau, nu).map_err(CliError::domain)?;
            let strategy = match strategy {
                None | Some(StrategyName::Band) => HrgStrategy::Band,
                Some(StrategyName::Naive) => HrgStrategy::Naive,
                Some(other) => {
                    return Err(CliError::config(format!(
                        "{other:?} is not a hyperbolic-model strategy"
                    )))
                }
            };
            Ok(ModelSpec::Hrg { params, strategy })
        }
    }
}

pub fn build_prediction(
    model: ModelName,
    n: usize,
    tau: f64,
    x_min: u32,
    nu: Option<f64>,
) -> Result<TheoryPrediction, CliError> {
    match model {
        ModelName::Ecm => {
            let law = PowerLawSpec::new(tau, x_min).map_err(CliError::domain)?;
            theory::predict_ecm(n, &law).map_err(CliError::domain)
        }
        ModelName::Irg => {
            let law = PowerLawSpec::new(tau, x_min).map_err(CliError::domain)?;
            theory::predict_irg(n, &law).map_err(CliError::domain)
        }
        ModelName::Hrg => {
            let nu = nu.ok_or_else(|| CliError::config("the hyperbolic model requires --nu"))?;
            let params = HrgParams::new(n, tau, nu).map_err(CliError::domain)?;
            theory::predict_hrg(&params).map_err(CliError::domain)
        }
    }
}
