//! Random-graph null models for scale-free networks and the statistics used
//! to study their degree-degree correlations.
//!
//! The crate provides three generators that produce simple graphs with
//! power-law degrees (erased configuration model, rank-1 inhomogeneous
//! random graph, hyperbolic random graph), the average nearest neighbor
//! degree and local clustering curves over single graphs and seeded
//! ensembles, and closed-form evaluation of the limit constants those
//! curves converge to.

pub mod graph;
pub mod models;
pub mod oracle;
pub mod sampling;
pub mod stats;
pub mod theory;

pub use graph::{build_simple_graph, read_edge_list, write_edge_list, SimpleGraph};
pub use models::{generate_ecm, generate_hrg, generate_irg, ModelSpec};
pub use sampling::{HrgParams, PowerLawSpec, SeedSpec};
pub use stats::{annd_curve, clustering_curve, EpsilonRule};
