//! Semi-supervised relax-and-round, the per-node model matrix, query
//! selection (anchor nodes, then expected model change) and the query loops.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{GroundTruth, ModifiedAdjacency};
use crate::sdp::{solve_sdp, SolveResult, SolverConfig, VectorLabeling};
use crate::simplex::{
    align_to_labels, best_fit_simplex, canonical_simplex, dot, round_labeling, DiscreteLabeling,
    SimplexBasis,
};

/// Per-node label distributions, `n x r` row-major. Supervised rows are deltas.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelMatrix {
    probs: Vec<f64>,
    r: usize,
}

impl ModelMatrix {
    pub fn n(&self) -> usize {
        self.probs.len() / self.r
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.probs[i * self.r..(i + 1) * self.r]
    }

    /// Entrywise L1 distance.
    pub fn l1_distance(&self, other: &ModelMatrix) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectionRule {
    Anchor,
    Memc,
    Random,
}

impl SelectionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectionRule::Anchor => "anchor",
            SelectionRule::Memc => "memc",
            SelectionRule::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryRecord {
    pub step: usize,
    pub node: usize,
    pub label: usize,
    pub rule: SelectionRule,
    pub score: f64,
}

/// Ordered record of queries; a node can be queried once.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QueryLog {
    records: Vec<QueryRecord>,
}

impl QueryLog {
    pub fn push(&mut self, record: QueryRecord) -> Result<()> {
        if self.records.iter().any(|r| r.node == record.node) {
            return Err(Error::State(format!("node {} queried twice", record.node)));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[QueryRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn pins(&self) -> Vec<(usize, usize)> {
        self.records.iter().map(|r| (r.node, r.label)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MemcMode {
    /// Reuse the current solution with the candidate row overwritten.
    #[default]
    Rank1,
    /// Re-solve the SDP for every hypothesis. Test-scale only.
    Exact,
}

/// Which rows the model matrix conditions on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Expectation {
    /// Raw solver rows.
    #[default]
    Relaxed,
    /// The rounded hard labeling.
    Rounded,
}

#[derive(Debug, Clone, Default)]
pub struct ActiveConfig {
    pub solver: SolverConfig,
    pub mode: MemcMode,
    pub expectation: Expectation,
}

/// Output of [`semi_supervised`].
#[derive(Debug, Clone)]
pub struct SemiSupervised {
    pub labeling: DiscreteLabeling,
    pub solve: SolveResult,
    pub basis: SimplexBasis,
}

fn seen_labels(pins: &[(usize, usize)], r: usize) -> Vec<usize> {
    let mut seen = vec![false; r];
    for &(_, label) in pins {
        if label < r {
            seen[label] = true;
        }
    }
    (0..r).filter(|&c| seen[c]).collect()
}

/// Basis for rounding `x`: the pinned simplex when every label is
/// supervised, else a fitted simplex relabeled to agree with the pins.
pub fn rounding_basis(x: &VectorLabeling, r: usize, seed: u64) -> Result<SimplexBasis> {
    let canonical = canonical_simplex(r, x.dim())?;
    let seen = seen_labels(&x.pins(), r);
    if seen.len() == r {
        return Ok(canonical);
    }
    let fitted = best_fit_simplex(x, r, seed)?;
    align_to_labels(&fitted, &canonical, &seen)
}

/// Relax-and-round: solve the pinned SDP, pick the basis, round free rows.
pub fn semi_supervised(
    m: &ModifiedAdjacency,
    pins: &[(usize, usize)],
    r: usize,
    cfg: &SolverConfig,
) -> Result<SemiSupervised> {
    let d = cfg.resolve_rank(m.n(), r);
    let canonical = canonical_simplex(r, d)?;
    let solve = solve_sdp(m, pins, &canonical, cfg)?;
    let basis = rounding_basis(&solve.x, r, cfg.seed)?;
    let labeling = round_labeling(&solve.x, &basis)?;
    Ok(SemiSupervised {
        labeling,
        solve,
        basis,
    })
}

fn projections(m: &ModifiedAdjacency, rows: &VectorLabeling, basis: &SimplexBasis) -> Result<Vec<f64>> {
    if rows.dim() != basis.dim() {
        return Err(Error::dim(basis.dim(), rows.dim()));
    }
    if rows.n() != m.n() {
        return Err(Error::dim(m.n(), rows.n()));
    }
    let field = m.apply_rows(rows.as_slice(), rows.dim())?;
    Ok(field
        .chunks_exact(rows.dim())
        .flat_map(|f| basis.project(f))
        .collect())
}

fn softmax_into(logits: &[f64], kappa: f64, out: &mut [f64]) {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for (o, l) in out.iter_mut().zip(logits) {
        *o = (kappa * (l - max)).exp();
        total += *o;
    }
    out.iter_mut().for_each(|o| *o /= total);
}

fn kappa(r: usize) -> f64 {
    (r as f64 - 1.0) / r as f64
}

/// Model matrix conditioned on `rows`: pinned rows are deltas, every other
/// row is the conditional distribution given all remaining rows.
pub fn model_phi(m: &ModifiedAdjacency, rows: &VectorLabeling, basis: &SimplexBasis) -> Result<ModelMatrix> {
    let r = basis.r();
    let proj = projections(m, rows, basis)?;
    let mut probs = vec![0.0; rows.n() * r];
    for i in 0..rows.n() {
        let out = &mut probs[i * r..(i + 1) * r];
        match rows.pinned(i) {
            Some(label) => out[label] = 1.0,
            None => softmax_into(&proj[i * r..(i + 1) * r], kappa(r), out),
        }
    }
    Ok(ModelMatrix { probs, r })
}

/// Expected model change of querying `q`, using the cached projections
/// `proj = (M X) B^T`. Overwriting row `q` with vertex `c` shifts row `i` of
/// `M X` by `M_iq (b_c - X_q)`, hence its projections by `M_iq (B b_c - B X_q)`.
fn rank1_score(
    m: &ModifiedAdjacency,
    rows: &VectorLabeling,
    basis: &SimplexBasis,
    proj: &[f64],
    before: &ModelMatrix,
    q: usize,
) -> f64 {
    let (n, r) = (rows.n(), basis.r());
    let k = kappa(r);
    let current = basis.project(rows.row(q));
    let mut column = vec![m.w_out(); n];
    column[q] = 0.0;
    for &j in m.graph().neighbors(q) {
        column[j] = m.w_in();
    }
    let mut logits = vec![0.0; r];
    let mut after = vec![0.0; r];
    let mut expected = 0.0;
    for c in 0..r {
        let shift: Vec<f64> = (0..r)
            .map(|a| dot(basis.vector(a), basis.vector(c)) - current[a])
            .collect();
        let mut delta = 0.0;
        for i in 0..n {
            if i == q {
                delta += before
                    .row(q)
                    .iter()
                    .enumerate()
                    .map(|(a, p)| (if a == c { 1.0 } else { 0.0 } - p).abs())
                    .sum::<f64>();
                continue;
            }
            if rows.pinned(i).is_some() {
                continue;
            }
            for a in 0..r {
                logits[a] = proj[i * r + a] + column[i] * shift[a];
            }
            softmax_into(&logits, k, &mut after);
            delta += after
                .iter()
                .zip(before.row(i))
                .map(|(x, y)| (x - y).abs())
                .sum::<f64>();
        }
        expected += before.row(q)[c] * delta;
    }
    expected
}

/// Scores within this relative margin of the running best count as ties.
const TIE_TOL: f64 = 1e-12;

/// Argmax in index order; near-ties keep the earlier (lower) index.
fn argmax_lowest(scores: impl IntoIterator<Item = (usize, f64)>) -> Option<(usize, f64)> {
    scores.into_iter().fold(None, |best, (node, score)| match best {
        Some((_, s)) if score <= s + TIE_TOL * s.abs().max(1.0) => best,
        _ => Some((node, score)),
    })
}

/// Expected model change of every unlabeled node (`None` for labeled ones).
pub fn memc_scores(
    m: &ModifiedAdjacency,
    rows: &VectorLabeling,
    basis: &SimplexBasis,
    mode: MemcMode,
    solver: &SolverConfig,
) -> Result<Vec<Option<f64>>> {
    let r = basis.r();
    let pins = rows.pins();
    if seen_labels(&pins, r).len() < r {
        return Err(Error::State(
            "expected model change needs every label supervised".into(),
        ));
    }
    if pins.len() == rows.n() {
        return Err(Error::State("no unlabeled nodes left".into()));
    }
    let before = model_phi(m, rows, basis)?;
    match mode {
        MemcMode::Rank1 => {
            let proj = projections(m, rows, basis)?;
            Ok((0..rows.n())
                .into_par_iter()
                .map(|q| {
                    rows.pinned(q)
                        .is_none()
                        .then(|| rank1_score(m, rows, basis, &proj, &before, q))
                })
                .collect())
        }
        MemcMode::Exact => (0..rows.n())
            .map(|q| {
                if rows.pinned(q).is_some() {
                    return Ok(None);
                }
                let mut score = 0.0;
                for c in 0..r {
                    let mut extended = pins.clone();
                    extended.push((q, c));
                    let cfg = SolverConfig {
                        warm_start: Some(rows.clone()),
                        ..solver.clone()
                    };
                    let solved = solve_sdp(m, &extended, basis, &cfg)?;
                    let after = model_phi(m, &solved.x, basis)?;
                    score += before.row(q)[c] * after.l1_distance(&before);
                }
                Ok(Some(score))
            })
            .collect(),
    }
}

/// Node maximizing the expected model change; ties go to the lowest index.
pub fn memc_select(
    m: &ModifiedAdjacency,
    rows: &VectorLabeling,
    basis: &SimplexBasis,
    mode: MemcMode,
    solver: &SolverConfig,
) -> Result<(usize, f64)> {
    let scores = memc_scores(m, rows, basis, mode, solver)?;
    argmax_lowest(scores.into_iter().enumerate().filter_map(|(i, s)| s.map(|s| (i, s))))
        .ok_or_else(|| Error::State("no unlabeled nodes left".into()))
}

/// Node most likely to belong to a label nobody has supervised yet.
pub fn anchor_select(m: &ModifiedAdjacency, rows: &VectorLabeling, basis: &SimplexBasis) -> Result<(usize, f64)> {
    let r = basis.r();
    let seen = seen_labels(&rows.pins(), r);
    if seen.len() == r {
        return Err(Error::State("every label is already supervised".into()));
    }
    let unseen: Vec<usize> = (0..r).filter(|c| !seen.contains(c)).collect();
    let phi = model_phi(m, rows, basis)?;
    let scores = (0..rows.n()).filter(|&i| rows.pinned(i).is_none()).map(|i| {
        let row = phi.row(i);
        (i, unseen.iter().map(|&c| row[c]).fold(f64::NEG_INFINITY, f64::max))
    });
    argmax_lowest(scores).ok_or_else(|| Error::State("no unlabeled nodes left".into()))
}

/// Result of a query loop.
#[derive(Debug, Clone)]
pub struct QueryOutcome {
    pub labeling: DiscreteLabeling,
    pub log: QueryLog,
    /// Rounded labelings after exactly `k` queries, for each requested `k`.
    pub snapshots: Vec<(usize, DiscreteLabeling)>,
    /// Relaxed solution behind `labeling`.
    pub solve: SolveResult,
    /// Basis `labeling` was rounded against.
    pub basis: SimplexBasis,
}

fn check_loop_inputs(m: &ModifiedAdjacency, truth: &GroundTruth, budget: usize) -> Result<()> {
    if truth.n() != m.n() {
        return Err(Error::dim(m.n(), truth.n()));
    }
    if budget > m.n() {
        return Err(Error::Parameter(format!(
            "query budget {budget} exceeds node count {}",
            m.n()
        )));
    }
    Ok(())
}

/// Active learning: each round solves the SDP (warm-started from the last
/// round), queries an anchor node while some label is unsupervised and the
/// expected-model-change maximizer afterwards, then finishes with one
/// semi-supervised solve on all queried labels.
pub fn active_loop(
    m: &ModifiedAdjacency,
    truth: &GroundTruth,
    budget: usize,
    cfg: &ActiveConfig,
    snapshot_at: &[usize],
) -> Result<QueryOutcome> {
    check_loop_inputs(m, truth, budget)?;
    let r = truth.r();
    let d = cfg.solver.resolve_rank(m.n(), r);
    let canonical = canonical_simplex(r, d)?;
    let mut log = QueryLog::default();
    let mut snapshots = Vec::new();
    let mut warm = cfg.solver.warm_start.clone();

    for step in 0..budget {
        let solver = SolverConfig {
            warm_start: warm.take(),
            ..cfg.solver.clone()
        };
        let pins = log.pins();
        let solved = solve_sdp(m, &pins, &canonical, &solver)?;
        let basis = rounding_basis(&solved.x, r, solver.seed)?;
        let rounded = round_labeling(&solved.x, &basis)?;
        if snapshot_at.contains(&step) {
            snapshots.push((step, rounded.clone()));
        }
        let rows = match cfg.expectation {
            Expectation::Relaxed => solved.x.clone(),
            Expectation::Rounded => {
                VectorLabeling::embed(rounded.assignments(), rounded.labeled_mask(), &basis)?
            }
        };
        let complete = seen_labels(&pins, r).len() == r;
        let (node, score, rule) = if complete {
            let (node, score) = memc_select(m, &rows, &basis, cfg.mode, &solver)?;
            (node, score, SelectionRule::Memc)
        } else {
            let (node, score) = anchor_select(m, &rows, &basis)?;
            (node, score, SelectionRule::Anchor)
        };
        log.push(QueryRecord {
            step,
            node,
            label: truth.reveal(node),
            rule,
            score,
        })?;
        warm = Some(solved.x);
    }

    let solver = SolverConfig {
        warm_start: warm,
        ..cfg.solver.clone()
    };
    let last = semi_supervised(m, &log.pins(), r, &solver)?;
    if snapshot_at.contains(&budget) {
        snapshots.push((budget, last.labeling.clone()));
    }
    Ok(QueryOutcome {
        labeling: last.labeling,
        log,
        snapshots,
        solve: last.solve,
        basis: last.basis,
    })
}

/// Seeded uniform permutation of the nodes; the random baseline queries its prefix.
pub fn random_query_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Random-selection baseline: `budget` distinct uniform queries, then one
/// semi-supervised solve.
pub fn random_baseline_loop(
    m: &ModifiedAdjacency,
    truth: &GroundTruth,
    budget: usize,
    seed: u64,
    solver: &SolverConfig,
) -> Result<QueryOutcome> {
    check_loop_inputs(m, truth, budget)?;
    let mut log = QueryLog::default();
    for (step, node) in random_query_order(m.n(), seed).into_iter().take(budget).enumerate() {
        log.push(QueryRecord {
            step,
            node,
            label: truth.reveal(node),
            rule: SelectionRule::Random,
            score: 0.0,
        })?;
    }
    let out = semi_supervised(m, &log.pins(), truth.r(), solver)?;
    Ok(QueryOutcome {
        labeling: out.labeling,
        log,
        snapshots: Vec::new(),
        solve: out.solve,
        basis: out.basis,
    })
}

/// Fraction of non-queried nodes labeled correctly. With no queries the
/// label names are arbitrary, so the best relabeling of `pred` is used.
pub fn accuracy(pred: &DiscreteLabeling, truth: &GroundTruth, queried: &[bool]) -> Result<f64> {
    if pred.r() != truth.r() {
        return Err(Error::Input(format!(
            "prediction has r = {}, truth has r = {}",
            pred.r(),
            truth.r()
        )));
    }
    if pred.n() != truth.n() {
        return Err(Error::dim(truth.n(), pred.n()));
    }
    if queried.len() != truth.n() {
        return Err(Error::dim(truth.n(), queried.len()));
    }
    let r = truth.r();
    let mut confusion = vec![vec![0usize; r]; r];
    let mut total = 0usize;
    for i in 0..truth.n() {
        if !queried[i] {
            confusion[pred.label(i)][truth.reveal(i)] += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Ok(1.0);
    }
    let correct = if queried.iter().any(|&q| q) {
        (0..r).map(|c| confusion[c][c]).sum()
    } else {
        best_matching(&confusion)
    };
    Ok(correct as f64 / total as f64)
}

/// Maximum-weight perfect matching between predicted and true labels,
/// by dynamic programming over subsets of true labels.
fn best_matching(confusion: &[Vec<usize>]) -> usize {
    let r = confusion.len();
    let mut best = vec![0usize; 1 << r];
    for mask in 0usize..(1 << r) {
        let row = mask.count_ones() as usize;
        if row >= r {
            continue;
        }
        for (t, &count) in confusion[row].iter().enumerate() {
            if mask & (1 << t) == 0 {
                let next = mask | (1 << t);
                best[next] = best[next].max(best[mask] + count);
            }
        }
    }
    best[(1 << r) - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sbm_sample, Graph, SbmParams};

    fn truth(labels: &[usize], r: usize) -> GroundTruth {
        GroundTruth::new(labels.to_vec(), r).unwrap()
    }

    #[test]
    fn accuracy_cases() {
        let t = truth(&[0, 1, 1, 0, 1], 2);
        let same = DiscreteLabeling::unsupervised(vec![0, 1, 1, 0, 1], 2).unwrap();
        assert_eq!(accuracy(&same, &t, &[false; 5]).unwrap(), 1.0);

        let flipped = DiscreteLabeling::unsupervised(vec![1, 0, 0, 1, 0], 2).unwrap();
        assert_eq!(accuracy(&flipped, &t, &[false; 5]).unwrap(), 1.0);
        let queried = [true, false, false, false, false];
        assert_eq!(accuracy(&flipped, &t, &queried).unwrap(), 0.0);

        let wrong_r = DiscreteLabeling::unsupervised(vec![0; 5], 3).unwrap();
        assert!(accuracy(&wrong_r, &t, &[false; 5]).is_err());
        assert_eq!(accuracy(&flipped, &t, &[true; 5]).unwrap(), 1.0);
    }

    #[test]
    fn matching_over_three_labels() {
        let t = truth(&[0, 0, 1, 1, 2, 2], 3);
        let pred = DiscreteLabeling::unsupervised(vec![2, 2, 0, 0, 1, 1], 3).unwrap();
        assert_eq!(accuracy(&pred, &t, &[false; 6]).unwrap(), 1.0);
    }

    #[test]
    fn query_log_rejects_repeats() {
        let mut log = QueryLog::default();
        let rec = QueryRecord {
            step: 0,
            node: 3,
            label: 1,
            rule: SelectionRule::Random,
            score: 0.0,
        };
        log.push(rec.clone()).unwrap();
        assert!(matches!(log.push(rec), Err(Error::State(_))));
    }

    #[test]
    fn fully_labeled_is_identity() {
        let params = SbmParams::new(10, 2, 0.5, 0.1).unwrap();
        let (g, t) = sbm_sample(&params, 4).unwrap();
        let m = ModifiedAdjacency::new(g, 0.5, 0.1);
        let pins: Vec<_> = t.labels().iter().copied().enumerate().collect();
        let out = semi_supervised(&m, &pins, 2, &SolverConfig::default()).unwrap();
        assert_eq!(out.labeling.assignments(), t.labels());
    }

    #[test]
    fn phi_uniform_when_p_equals_q() {
        let (g, _) = Graph::from_edges(6, [(0, 1), (2, 3)]).unwrap();
        let m = ModifiedAdjacency::new(g, 0.3, 0.3);
        let basis = canonical_simplex(2, 3).unwrap();
        let rows = VectorLabeling::from_rows_normalized(
            (0..18).map(|k| ((k * 7 % 5) as f64) - 1.7).collect(),
            3,
        )
        .unwrap()
        .with_row_pinned(4, 1, &basis);
        let phi = model_phi(&m, &rows, &basis).unwrap();
        for i in 0..6 {
            if i == 4 {
                assert_eq!(phi.row(i), &[0.0, 1.0]);
            } else {
                assert!(phi.row(i).iter().all(|p| (p - 0.5).abs() < 1e-15));
            }
        }
    }

    #[test]
    fn selection_state_errors() {
        let (g, _) = Graph::from_edges(3, [(0, 1)]).unwrap();
        let m = ModifiedAdjacency::new(g, 0.6, 0.1);
        let basis = canonical_simplex(2, 2).unwrap();
        let all = VectorLabeling::embed(&[0, 1, 0], &[true; 3], &basis).unwrap();
        let cfg = SolverConfig::default();
        assert!(matches!(anchor_select(&m, &all, &basis), Err(Error::State(_))));
        assert!(matches!(
            memc_select(&m, &all, &basis, MemcMode::Rank1, &cfg),
            Err(Error::State(_))
        ));
        let one = VectorLabeling::embed(&[0, 1, 0], &[true, false, false], &basis).unwrap();
        assert!(matches!(
            memc_select(&m, &one, &basis, MemcMode::Rank1, &cfg),
            Err(Error::State(_))
        ));
    }

    #[test]
    fn single_unlabeled_node_is_chosen() {
        let (g, _) = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let m = ModifiedAdjacency::new(g, 0.6, 0.1);
        let basis = canonical_simplex(2, 2).unwrap();
        let rows = VectorLabeling::embed(&[0, 0, 1, 1], &[true, true, false, true], &basis).unwrap();
        let (node, _) = memc_select(&m, &rows, &basis, MemcMode::Rank1, &SolverConfig::default()).unwrap();
        assert_eq!(node, 2);
    }

    #[test]
    fn symmetric_cycle_ties_to_lowest() {
        // 4-cycle 0-1-2-3-0 with opposite nodes 0 and 2 labeled differently.
        let (g, _) = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let m = ModifiedAdjacency::new(g, 0.6, 0.2);
        let basis = canonical_simplex(2, 2).unwrap();
        let rows = VectorLabeling::embed(&[0, 0, 1, 0], &[true, false, true, false], &basis).unwrap();
        let scores = memc_scores(&m, &rows, &basis, MemcMode::Rank1, &SolverConfig::default()).unwrap();
        let (a, b) = (scores[1].unwrap(), scores[3].unwrap());
        assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        let (node, _) = memc_select(&m, &rows, &basis, MemcMode::Rank1, &SolverConfig::default()).unwrap();
        assert_eq!(node, 1);
    }

    #[test]
    fn loops_reject_oversized_budget() {
        let params = SbmParams::new(6, 2, 0.5, 0.1).unwrap();
        let (g, t) = sbm_sample(&params, 1).unwrap();
        let m = ModifiedAdjacency::new(g, 0.5, 0.1);
        assert!(matches!(
            active_loop(&m, &t, 7, &ActiveConfig::default(), &[]),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            random_baseline_loop(&m, &t, 7, 0, &SolverConfig::default()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn random_order_is_seeded() {
        assert_eq!(random_query_order(50, 9), random_query_order(50, 9));
        assert_ne!(random_query_order(50, 9), random_query_order(50, 10));
    }
}
