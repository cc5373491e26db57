//! Label likelihoods under the block model.
//!
//! For a hard labeling `X` (rows on the simplex) the posterior is proportional
//! to `exp((r-1)/(2r) Tr(X^T M X))`, so every comparison between labelings is
//! a difference of trace scores. The single-node conditional is a softmax of
//! `(r-1)/r <M_i X, vertex>` over the vertices; applying the same formula to
//! relaxed rows gives the approximation used by the active learner.
//!
//! The exhaustive routines here exist as oracles for small instances.

use crate::error::{Error, Result};
use crate::graph::{clamp_prob, Graph, ModifiedAdjacency};
use crate::sdp::{trace_score, VectorLabeling};
use crate::simplex::{DiscreteLabeling, SimplexBasis};

/// Completions enumerated by the exhaustive oracles are capped at this count.
pub const BRUTE_FORCE_CAP: f64 = 2e6;

const VERTEX_TOL: f64 = 1e-9;

/// A probability vector over the `r` labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelDistribution {
    probs: Vec<f64>,
}

impl LabelDistribution {
    /// Normalized `exp(logits)`, shifted by the max logit first.
    pub fn softmax(logits: &[f64]) -> Self {
        let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = logits.iter().map(|l| (l - max).exp()).collect();
        let total: f64 = weights.iter().sum();
        LabelDistribution {
            probs: weights.into_iter().map(|w| w / total).collect(),
        }
    }

    /// All mass on `label`.
    pub fn delta(label: usize, r: usize) -> Self {
        let mut probs = vec![0.0; r];
        probs[label] = 1.0;
        LabelDistribution { probs }
    }

    pub fn uniform(r: usize) -> Self {
        LabelDistribution {
            probs: vec![1.0 / r as f64; r],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn r(&self) -> usize {
        self.probs.len()
    }
}

/// Lower bound on `likelihood(rounded) / likelihood(best hard labeling)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioCertificate {
    pub value: f64,
    pub disc_score: f64,
    pub relax_score: f64,
}

fn kappa(r: usize) -> f64 {
    (r as f64 - 1.0) / r as f64
}

/// Unnormalized log-posterior `(r-1)/(2r) Tr(X^T M X)` of a hard labeling
/// given as simplex rows.
pub fn log_likelihood_score(m: &ModifiedAdjacency, x: &VectorLabeling, basis: &SimplexBasis) -> Result<f64> {
    if x.dim() != basis.dim() {
        return Err(Error::dim(basis.dim(), x.dim()));
    }
    for i in 0..x.n() {
        let row = x.row(i);
        let on_vertex = (0..basis.r()).any(|c| {
            basis
                .vector(c)
                .iter()
                .zip(row)
                .all(|(a, b)| (a - b).abs() <= VERTEX_TOL)
        });
        if !on_vertex {
            return Err(Error::Input(format!("row {i} is not a simplex vertex")));
        }
    }
    Ok(0.5 * kappa(basis.r()) * trace_score(m, x)?)
}

/// `sum_{j != i} M_ij X_j`.
pub fn neighbor_field(m: &ModifiedAdjacency, i: usize, x: &VectorLabeling) -> Result<Vec<f64>> {
    if x.n() != m.n() {
        return Err(Error::dim(m.n(), x.n()));
    }
    if i >= x.n() {
        return Err(Error::Input(format!("node {i} out of range")));
    }
    let d = x.dim();
    let mut colsum = vec![0.0; d];
    for j in 0..x.n() {
        if j != i {
            for (s, v) in colsum.iter_mut().zip(x.row(j)) {
                *s += v;
            }
        }
    }
    let mut adj = vec![0.0; d];
    for &j in m.graph().neighbors(i) {
        for (s, v) in adj.iter_mut().zip(x.row(j)) {
            *s += v;
        }
    }
    let gap = m.w_in() - m.w_out();
    Ok(adj
        .iter()
        .zip(&colsum)
        .map(|(a, c)| gap * a + m.w_out() * c)
        .collect())
}

/// Softmax of `(r-1)/r <field, vertex_c>` over the vertices.
pub(crate) fn distribution_from_field(field: &[f64], basis: &SimplexBasis) -> LabelDistribution {
    let k = kappa(basis.r());
    let logits: Vec<f64> = basis.project(field).into_iter().map(|s| k * s).collect();
    LabelDistribution::softmax(&logits)
}

/// `P[X_i = c | everything else] = softmax_c((r-1)/r <M_i X_{-i}, vertex_c>)`.
///
/// Row `i` of `x` is ignored. Hard rows give the exact conditional; relaxed
/// rows give its vector-label generalization.
pub fn conditional_distribution(
    m: &ModifiedAdjacency,
    i: usize,
    x: &VectorLabeling,
    basis: &SimplexBasis,
) -> Result<LabelDistribution> {
    if x.dim() != basis.dim() {
        return Err(Error::dim(basis.dim(), x.dim()));
    }
    let field = neighbor_field(m, i, x)?;
    Ok(distribution_from_field(&field, basis))
}

/// Certificate `exp((r-1)/(2r) (disc - relax))` comparing a rounded labeling
/// with the relaxed solution it came from.
pub fn approx_ratio_certificate(
    m: &ModifiedAdjacency,
    rounded: &DiscreteLabeling,
    relaxed: &VectorLabeling,
    basis: &SimplexBasis,
) -> Result<RatioCertificate> {
    if rounded.labeled_pairs() != relaxed.pins() {
        return Err(Error::Input(
            "rounded and relaxed solutions have different labeled sets".into(),
        ));
    }
    let embedded = VectorLabeling::embed(rounded.assignments(), rounded.labeled_mask(), basis)?;
    let disc_score = trace_score(m, &embedded)?;
    let relax_score = trace_score(m, relaxed)?;
    Ok(RatioCertificate {
        value: (0.5 * kappa(basis.r()) * (disc_score - relax_score)).exp(),
        disc_score,
        relax_score,
    })
}

struct Completions {
    free: Vec<usize>,
    labels: Vec<usize>,
    r: usize,
    started: bool,
}

impl Completions {
    fn new(n: usize, pins: &[(usize, usize)], r: usize) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for &(node, label) in pins {
            if node >= n {
                return Err(Error::Input(format!("pinned node {node} out of range")));
            }
            if label >= r {
                return Err(Error::LabelRange { label, r });
            }
            labels[node] = label;
        }
        let free: Vec<usize> = (0..n).filter(|&i| labels[i] == usize::MAX).collect();
        let work = (r as f64).powi(free.len() as i32);
        if work > BRUTE_FORCE_CAP {
            return Err(Error::SizeCap {
                work,
                cap: BRUTE_FORCE_CAP,
            });
        }
        for &i in &free {
            labels[i] = 0;
        }
        Ok(Completions {
            free,
            labels,
            r,
            started: false,
        })
    }

    /// Advances in lexicographic order (first free node most significant).
    fn advance(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            return Some(&self.labels);
        }
        for &node in self.free.iter().rev() {
            if self.labels[node] + 1 < self.r {
                self.labels[node] += 1;
                return Some(&self.labels);
            }
            self.labels[node] = 0;
        }
        None
    }
}

fn discrete_trace(dense: &[f64], labels: &[usize], off: f64) -> f64 {
    let n = labels.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let gram = if labels[i] == labels[j] { 1.0 } else { off };
            total += dense[i * n + j] * gram;
        }
    }
    2.0 * total
}

/// Exhaustive maximizer of the trace score over completions of `pins`;
/// ties go to the lexicographically smallest assignment.
pub fn brute_force_ml(m: &ModifiedAdjacency, pins: &[(usize, usize)], r: usize) -> Result<DiscreteLabeling> {
    if r < 2 {
        return Err(Error::Parameter(format!("r must be at least 2, got {r}")));
    }
    let n = m.n();
    let mut completions = Completions::new(n, pins, r)?;
    let dense = m.to_dense();
    let off = -1.0 / (r as f64 - 1.0);
    let mut best: Option<(f64, Vec<usize>)> = None;
    while let Some(labels) = completions.advance() {
        let score = discrete_trace(&dense, labels, off);
        if best.as_ref().is_none_or(|(b, _)| score > *b) {
            best = Some((score, labels.to_vec()));
        }
    }
    let (_, labels) = best.expect("at least one completion");
    let mut labeled = vec![false; n];
    for &(node, _) in pins {
        labeled[node] = true;
    }
    DiscreteLabeling::new(labels, labeled, r)
}

/// `ln P[graph | labels]` under independent Bernoulli edges.
pub(crate) fn bernoulli_log_likelihood(graph: &Graph, p: f64, q: f64, labels: &[usize], r: usize) -> f64 {
    let mut sizes = vec![0u64; r];
    for &l in labels {
        sizes[l] += 1;
    }
    let n = labels.len() as u64;
    let pairs_in: u64 = sizes.iter().map(|g| g * g.saturating_sub(1) / 2).sum();
    let pairs_out = n * n.saturating_sub(1) / 2 - pairs_in;
    let e_in = graph
        .edges()
        .iter()
        .filter(|&&(u, v)| labels[u] == labels[v])
        .count() as u64;
    let e_out = graph.edge_count() as u64 - e_in;
    e_in as f64 * p.ln()
        + (pairs_in - e_in) as f64 * (1.0 - p).ln()
        + e_out as f64 * q.ln()
        + (pairs_out - e_out) as f64 * (1.0 - q).ln()
}

/// Exact marginal `P[X_i = c | graph, pins]`, summing the Bernoulli-product
/// likelihood over every completion (uniform label prior).
pub fn brute_force_posterior(
    graph: &Graph,
    p: f64,
    q: f64,
    pins: &[(usize, usize)],
    i: usize,
    r: usize,
) -> Result<LabelDistribution> {
    if r < 2 {
        return Err(Error::Parameter(format!("r must be at least 2, got {r}")));
    }
    if i >= graph.n() {
        return Err(Error::Input(format!("node {i} out of range")));
    }
    let (p, q) = (clamp_prob(p), clamp_prob(q));
    let mut completions = Completions::new(graph.n(), pins, r)?;
    if let Some(&(_, label)) = pins.iter().find(|(node, _)| *node == i) {
        return Ok(LabelDistribution::delta(label, r));
    }
    let mut per_label: Vec<Vec<f64>> = vec![Vec::new(); r];
    while let Some(labels) = completions.advance() {
        per_label[labels[i]].push(bernoulli_log_likelihood(graph, p, q, labels, r));
    }
    let log_mass: Vec<f64> = per_label.iter().map(|terms| log_sum_exp(terms)).collect();
    Ok(LabelDistribution::softmax(&log_mass))
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Sum of absolute entrywise differences between two distributions.
pub fn l1_distance(a: &LabelDistribution, b: &LabelDistribution) -> f64 {
    a.probs.iter().zip(&b.probs).map(|(x, y)| (x - y).abs()).sum()
}
