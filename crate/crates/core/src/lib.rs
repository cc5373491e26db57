//! Maximum-likelihood community detection on stochastic block models with
//! partial supervision and active label queries.
//!
//! The pipeline: build the [`ModifiedAdjacency`] of a graph, solve the
//! low-rank vector relaxation with [`solve_sdp`], round against a simplex
//! basis, and pick further nodes to query with [`active_loop`].

pub mod active;
pub mod bench;
pub mod error;
pub mod graph;
pub mod kmeans;
pub mod likelihood;
pub mod sdp;
pub mod simplex;

pub use active::{
    accuracy, active_loop, anchor_select, memc_scores, memc_select, model_phi, random_baseline_loop,
    random_query_order, rounding_basis, semi_supervised, ActiveConfig, Expectation, MemcMode,
    ModelMatrix, QueryLog, QueryOutcome, QueryRecord, SelectionRule, SemiSupervised,
};
pub use bench::{emit_csv, run_experiment, AccuracyCurve, Algorithm, ExperimentConfig};
pub use error::{Error, Result};
pub use graph::{
    estimate_params, read_edge_list, sbm_sample, write_edge_list, EdgeCleanup, Graph, GroundTruth,
    Ingested, ModifiedAdjacency, SbmParams,
};
pub use likelihood::{
    approx_ratio_certificate, brute_force_ml, brute_force_posterior, conditional_distribution,
    log_likelihood_score, LabelDistribution, RatioCertificate,
};
pub use sdp::{solve_sdp, SolveResult, SolverConfig, VectorLabeling};
pub use simplex::{best_fit_simplex, canonical_simplex, round_labeling, DiscreteLabeling, SimplexBasis};
