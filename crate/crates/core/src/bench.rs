//! Experiment harness: replicate graphs, run the query loops, aggregate
//! accuracy curves and write them as CSV.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::active::{
    accuracy, active_loop, random_query_order, semi_supervised, ActiveConfig, Expectation,
    MemcMode,
};
use crate::error::{Error, Result};
use crate::graph::{
    estimate_params, read_edge_list, sbm_sample, write_file, Graph, GroundTruth,
    ModifiedAdjacency, SbmParams,
};
use crate::sdp::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Active,
    Random,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Active => "active",
            Algorithm::Random => "random",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "active" => Ok(Algorithm::Active),
            "random" => Ok(Algorithm::Random),
            other => Err(Error::Parameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbabilitySource {
    /// Use the configured `p`, `q` (or `a/n`, `b/n`).
    #[default]
    Given,
    /// Plug-in estimate from the ground-truth labels, configured values as fallback.
    Estimated,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SbmSection {
    pub n: usize,
    pub r: usize,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
}

impl SbmSection {
    pub fn params(&self) -> Result<SbmParams> {
        match (self.a, self.b, self.p, self.q) {
            (Some(a), Some(b), None, None) => SbmParams::sparse(self.n, self.r, a, b),
            (None, None, Some(p), Some(q)) => SbmParams::new(self.n, self.r, p, q),
            _ => Err(Error::Parameter(
                "sbm source needs exactly one of (a, b) or (p, q)".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListSection {
    pub path: PathBuf,
    pub labels: PathBuf,
    pub r: Option<usize>,
    pub p: Option<f64>,
    pub q: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub rank: Option<usize>,
    pub restarts: usize,
    pub tol: Option<f64>,
    pub max_iters: usize,
    pub mode: String,
    pub expectation: String,
}

impl Default for SolverSection {
    fn default() -> Self {
        let d = SolverConfig::default();
        SolverSection {
            rank: None,
            restarts: d.restarts,
            tol: None,
            max_iters: d.max_iters,
            mode: "rank1".into(),
            expectation: "relaxed".into(),
        }
    }
}

impl SolverSection {
    pub fn active_config(&self, seed: u64) -> Result<ActiveConfig> {
        let mode = match self.mode.as_str() {
            "rank1" => MemcMode::Rank1,
            "exact" => MemcMode::Exact,
            other => return Err(Error::Parameter(format!("unknown mode {other:?}"))),
        };
        let expectation = match self.expectation.as_str() {
            "relaxed" => Expectation::Relaxed,
            "rounded" => Expectation::Rounded,
            other => return Err(Error::Parameter(format!("unknown expectation {other:?}"))),
        };
        if self.restarts == 0 {
            return Err(Error::Parameter("restarts must be at least 1".into()));
        }
        Ok(ActiveConfig {
            solver: SolverConfig {
                rank: self.rank,
                max_iters: self.max_iters,
                grad_tol: self.tol,
                restarts: self.restarts,
                seed,
                ..SolverConfig::default()
            },
            mode,
            expectation,
        })
    }
}

/// Whole experiment, as read from a TOML file. Exactly one of `sbm` and
/// `edges` must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seeds: Vec<u64>,
    /// Fractions of nodes queried at which accuracy is reported.
    pub grid: Vec<f64>,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub probabilities: ProbabilitySource,
    pub sbm: Option<SbmSection>,
    pub edges: Option<EdgeListSection>,
    #[serde(default)]
    pub solver: SolverSection,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parameter(format!("config: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Built-in presets: `fig3a` (r = 2, a = 5, b = 2, below the detection
    /// threshold) and `fig3b` (r = 6, a = 9, b = 1), both at n = 300 with 10 seeds.
    pub fn preset(name: &str) -> Result<Self> {
        let (r, a, b) = match name {
            "fig3a" => (2, 5.0, 2.0),
            "fig3b" => (6, 9.0, 1.0),
            other => return Err(Error::Parameter(format!("unknown preset {other:?}"))),
        };
        Ok(ExperimentConfig {
            seeds: (0..10).collect(),
            grid: vec![0.0, 0.025, 0.05, 0.075, 0.1, 0.15, 0.2],
            algorithms: vec![Algorithm::Active, Algorithm::Random],
            probabilities: ProbabilitySource::Given,
            sbm: Some(SbmSection {
                n: 300,
                r,
                a: Some(a),
                b: Some(b),
                p: None,
                q: None,
            }),
            edges: None,
            solver: SolverSection::default(),
            out: None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Parameter("at least one algorithm is required".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Parameter("at least one seed is required".into()));
        }
        if self.grid.is_empty() {
            return Err(Error::Parameter("query grid is empty".into()));
        }
        if self.grid.iter().any(|g| !(0.0..=1.0).contains(g)) {
            return Err(Error::Parameter("grid fractions must lie in [0, 1]".into()));
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter("grid must be strictly increasing".into()));
        }
        match (&self.sbm, &self.edges) {
            (Some(sbm), None) => sbm.params().map(|_| ()),
            (None, Some(_)) => Ok(()),
            _ => Err(Error::Parameter(
                "exactly one of [sbm] and [edges] must be configured".into(),
            )),
        }
    }
}

/// One aggregated point of an accuracy curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub pct_queried: f64,
    pub mean: f64,
    pub std: f64,
    pub replicates: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyCurve {
    pub algorithm: String,
    pub points: Vec<CurvePoint>,
}

/// Per-replicate accuracies, one entry per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateRun {
    pub seed: u64,
    pub algorithm: Algorithm,
    pub accuracies: Vec<f64>,
}

struct Instance {
    graph: Graph,
    truth: GroundTruth,
    p: f64,
    q: f64,
}

fn load_instance(cfg: &ExperimentConfig, seed: u64, ingested: Option<&Instance>) -> Result<Instance> {
    let (graph, truth, given) = match (&cfg.sbm, ingested) {
        (Some(sbm), _) => {
            let params = sbm.params()?;
            let (graph, truth) = sbm_sample(&params, seed)?;
            (graph, truth, Some((params.p, params.q)))
        }
        (None, Some(inst)) => (inst.graph.clone(), inst.truth.clone(), Some((inst.p, inst.q))),
        (None, None) => unreachable!("validated config"),
    };
    let (p, q) = match cfg.probabilities {
        ProbabilitySource::Given => given
            .filter(|(p, q)| p.is_finite() && q.is_finite())
            .ok_or_else(|| Error::Parameter("p and q must be given".into()))?,
        ProbabilitySource::Estimated => {
            let labeled: Vec<(usize, usize)> =
                truth.labels().iter().copied().enumerate().collect();
            estimate_params(&graph, &labeled, given.filter(|(p, q)| p.is_finite() && q.is_finite()))?
        }
    };
    Ok(Instance { graph, truth, p, q })
}

fn ingest(cfg: &ExperimentConfig) -> Result<Option<Instance>> {
    let Some(edges) = &cfg.edges else {
        return Ok(None);
    };
    let ingested = read_edge_list(&edges.path, &edges.labels, edges.r)?;
    Ok(Some(Instance {
        graph: ingested.graph,
        truth: ingested.truth,
        p: edges.p.unwrap_or(f64::NAN),
        q: edges.q.unwrap_or(f64::NAN),
    }))
}

/// Query counts for each grid fraction on an `n`-node graph.
pub fn grid_counts(grid: &[f64], n: usize) -> Vec<usize> {
    grid.iter().map(|g| (g * n as f64).round() as usize).collect()
}

fn run_replicate(cfg: &ExperimentConfig, seed: u64, ingested: Option<&Instance>) -> Result<Vec<ReplicateRun>> {
    let inst = load_instance(cfg, seed, ingested)?;
    let n = inst.graph.n();
    let counts = grid_counts(&cfg.grid, n);
    let budget = counts.iter().copied().max().unwrap_or(0);
    if budget > n {
        return Err(Error::Parameter(format!("query budget {budget} exceeds n = {n}")));
    }
    let m = ModifiedAdjacency::new(inst.graph, inst.p, inst.q);
    let active_cfg = cfg.solver.active_config(seed)?;
    let mut algorithms = cfg.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();

    let mut runs = Vec::new();
    for algorithm in algorithms {
        let wrap = |e: Error| Error::Replicate {
            seed,
            algorithm: algorithm.as_str().into(),
            source: Box::new(e),
        };
        let accuracies = match algorithm {
            Algorithm::Active => {
                let out = active_loop(&m, &inst.truth, budget, &active_cfg, &counts).map_err(wrap)?;
                let snapshots: BTreeMap<usize, _> = out.snapshots.into_iter().collect();
                counts
                    .iter()
                    .map(|&k| {
                        let mut queried = vec![false; n];
                        for rec in &out.log.records()[..k] {
                            queried[rec.node] = true;
                        }
                        accuracy(&snapshots[&k], &inst.truth, &queried)
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(wrap)?
            }
            Algorithm::Random => {
                let order = random_query_order(n, seed);
                counts
                    .iter()
                    .map(|&k| {
                        let pins: Vec<_> = order[..k]
                            .iter()
                            .map(|&i| (i, inst.truth.reveal(i)))
                            .collect();
                        let out = semi_supervised(&m, &pins, inst.truth.r(), &active_cfg.solver)?;
                        let mut queried = vec![false; n];
                        for &i in &order[..k] {
                            queried[i] = true;
                        }
                        accuracy(&out.labeling, &inst.truth, &queried)
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(wrap)?
            }
        };
        runs.push(ReplicateRun {
            seed,
            algorithm,
            accuracies,
        });
    }
    Ok(runs)
}

/// Runs every replicate (concurrently) and returns the raw per-seed accuracies
/// in `(seed order, algorithm)` order.
pub fn run_replicates(cfg: &ExperimentConfig) -> Result<Vec<ReplicateRun>> {
    cfg.validate()?;
    let ingested = ingest(cfg)?;
    let per_seed: Vec<Vec<ReplicateRun>> = cfg
        .seeds
        .par_iter()
        .map(|&seed| run_replicate(cfg, seed, ingested.as_ref()))
        .collect::<Result<_>>()?;
    Ok(per_seed.into_iter().flatten().collect())
}

/// Mean and sample standard deviation of accuracy at each grid point.
pub fn aggregate(grid: &[f64], runs: &[ReplicateRun]) -> Vec<AccuracyCurve> {
    let mut by_algorithm: BTreeMap<&str, Vec<&ReplicateRun>> = BTreeMap::new();
    for run in runs {
        by_algorithm.entry(run.algorithm.as_str()).or_default().push(run);
    }
    by_algorithm
        .into_iter()
        .map(|(algorithm, runs)| {
            let points = grid
                .iter()
                .enumerate()
                .map(|(g, &pct)| {
                    let values: Vec<f64> = runs.iter().map(|r| r.accuracies[g]).collect();
                    let count = values.len();
                    let mean = values.iter().sum::<f64>() / count as f64;
                    let std = if count > 1 {
                        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                            / (count - 1) as f64)
                            .sqrt()
                    } else {
                        0.0
                    };
                    CurvePoint {
                        pct_queried: pct,
                        mean,
                        std,
                        replicates: count,
                    }
                })
                .collect();
            AccuracyCurve {
                algorithm: algorithm.to_string(),
                points,
            }
        })
        .collect()
}

/// Runs the experiment and aggregates one curve per algorithm.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<AccuracyCurve>> {
    let runs = run_replicates(cfg)?;
    Ok(aggregate(&cfg.grid, &runs))
}

/// CSV text for `curves`, rows sorted by `(algorithm, pct_queried)`.
pub fn format_csv(curves: &[AccuracyCurve]) -> Result<String> {
    let mut rows: Vec<(&str, CurvePoint)> = curves
        .iter()
        .flat_map(|c| c.points.iter().map(move |p| (c.algorithm.as_str(), *p)))
        .collect();
    if rows.is_empty() {
        return Err(Error::Input("no accuracy points to write".into()));
    }
    rows.sort_by(|a, b| a.0.cmp(b.0).then(a.1.pct_queried.total_cmp(&b.1.pct_queried)));
    let mut out = String::from("algorithm,pct_queried,acc_mean,acc_std,n_replicates\n");
    for (algorithm, p) in rows {
        out.push_str(&format!(
            "{algorithm},{:.6},{:.6},{:.6},{}\n",
            p.pct_queried, p.mean, p.std, p.replicates
        ));
    }
    Ok(out)
}

/// Writes [`format_csv`] to `path`; nothing is created when there is nothing to write.
pub fn emit_csv(curves: &[AccuracyCurve], path: impl AsRef<Path>) -> Result<()> {
    let text = format_csv(curves)?;
    write_file(path.as_ref(), text.as_bytes())
}
