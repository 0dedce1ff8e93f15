//! The three null-model generators: erased configuration model, rank-1
//! inhomogeneous random graph (Chung-Lu kernel), and threshold hyperbolic
//! random graph.

mod ecm;
mod hrg;
mod irg;

pub use ecm::{ecm_from_degrees, generate_ecm, EcmOutcome};
pub use hrg::{
    generate_hrg, hrg_connection_prob, hrg_from_coordinates, hyperbolic_distance, HrgOutcome,
    HrgStrategy,
};
pub use irg::{generate_irg, irg_connection_prob, irg_from_weights, IrgOutcome, IrgStrategy};

use crate::graph::SimpleGraph;
use crate::sampling::{HrgParams, PowerLawSpec, SeedSpec};

/// A fully parametrized model, enough to generate one realization per seed.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Ecm {
        law: PowerLawSpec,
        n: usize,
    },
    Irg {
        law: PowerLawSpec,
        n: usize,
        strategy: IrgStrategy,
    },
    Hrg {
        params: HrgParams,
        strategy: HrgStrategy,
    },
}

impl ModelSpec {
    pub fn n(&self) -> usize {
        match self {
            ModelSpec::Ecm { n, .. } | ModelSpec::Irg { n, .. } => *n,
            ModelSpec::Hrg { params, .. } => params.n(),
        }
    }

    pub fn generate_graph(&self, seed: &SeedSpec) -> SimpleGraph {
        match self {
            ModelSpec::Ecm { law, n } => generate_ecm(law, *n, seed).graph,
            ModelSpec::Irg { law, n, strategy } => generate_irg(law, *n, seed, *strategy).graph,
            ModelSpec::Hrg { params, strategy } => generate_hrg(params, seed, *strategy).graph,
        }
    }
}
