//! Graphs, stochastic block model sampling and the log-likelihood-ratio
//! reweighted adjacency used as the objective kernel everywhere else.
//!
//! The reweighted ("modified") adjacency `M` has `M_ij = ln(p/q)` on edges,
//! `ln((1-p)/(1-q))` on non-edges and `0` on the diagonal. It is never stored
//! densely: products with `M` go through the sparse adjacency plus a rank-one
//! all-ones correction.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Probabilities are clamped into `[PROB_EPS, 1 - PROB_EPS]` before taking logs.
pub const PROB_EPS: f64 = 1e-6;

/// Clamp a probability away from 0 and 1.
pub fn clamp_prob(p: f64) -> f64 {
    p.clamp(PROB_EPS, 1.0 - PROB_EPS)
}

/// Simple undirected graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// What had to be dropped while building a graph from raw pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeCleanup {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Empty graph on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from unordered pairs. Self-loops and repeated pairs are
    /// dropped and counted; out-of-range endpoints are an error.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<(Self, EdgeCleanup)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut cleanup = EdgeCleanup::default();
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                cleanup.self_loops += 1;
                continue;
            }
            edges.push((u.min(v), u.max(v)));
        }
        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        cleanup.duplicates = before - edges.len();

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok((Graph { n, edges, adjacency }, cleanup))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adjacency[i].binary_search(&j).is_ok()
    }
}

/// Planted labels for every node. Doubles as the label oracle queried by the
/// active learner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    labels: Vec<usize>,
    r: usize,
}

impl GroundTruth {
    pub fn new(labels: Vec<usize>, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::Parameter(format!("r must be at least 2, got {r}")));
        }
        if let Some(&label) = labels.iter().find(|&&l| l >= r) {
            return Err(Error::LabelRange { label, r });
        }
        Ok(GroundTruth { labels, r })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Reveals the label of `node`.
    pub fn reveal(&self, node: usize) -> usize {
        self.labels[node]
    }
}

/// Parameters of `SBM(n, r, p, q)`, optionally in the sparse `(a/n, b/n)` form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbmParams {
    pub n: usize,
    pub r: usize,
    pub p: f64,
    pub q: f64,
    sparse: Option<(f64, f64)>,
}

impl SbmParams {
    pub fn new(n: usize, r: usize, p: f64, q: f64) -> Result<Self> {
        let params = SbmParams {
            n,
            r,
            p,
            q,
            sparse: None,
        };
        params.validate()?;
        Ok(params)
    }

    /// Sparse parameterization `p = a/n`, `q = b/n`.
    pub fn sparse(n: usize, r: usize, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be positive".into()));
        }
        if !(a >= 0.0 && b >= 0.0) {
            return Err(Error::Parameter(format!(
                "a and b must be non-negative, got a = {a}, b = {b}"
            )));
        }
        let params = SbmParams {
            n,
            r,
            p: a / n as f64,
            q: b / n as f64,
            sparse: Some((a, b)),
        };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::Parameter(format!("r must be at least 2, got {}", self.r)));
        }
        for (name, value) in [("p", self.p), ("q", self.q)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Parameter(format!(
                    "{name} must lie in [0, 1], got {value}"
                )));
            }
        }
        Ok(())
    }

    /// `(a, b)` when built with [`SbmParams::sparse`].
    pub fn sparse_form(&self) -> Option<(f64, f64)> {
        self.sparse
    }

    /// Signal-to-noise ratio `(a - b)^2 / (r (a + b))` of the sparse form.
    pub fn snr(&self) -> Option<f64> {
        self.sparse
            .map(|(a, b)| (a - b).powi(2) / (self.r as f64 * (a + b)))
    }

    /// `(p, q)` after clamping into `[PROB_EPS, 1 - PROB_EPS]`.
    pub fn clamped(&self) -> (f64, f64) {
        (clamp_prob(self.p), clamp_prob(self.q))
    }
}

/// Samples a graph and its planted labels. Labels are i.i.d. uniform; each
/// pair is an edge independently with probability `p` (same label) or `q`.
pub fn sbm_sample(params: &SbmParams, seed: u64) -> Result<(Graph, GroundTruth)> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<usize> = (0..params.n).map(|_| rng.gen_range(0..params.r)).collect();
    let mut edges = Vec::new();
    for i in 0..params.n {
        for j in (i + 1)..params.n {
            let prob = if labels[i] == labels[j] {
                params.p
            } else {
                params.q
            };
            if rng.gen::<f64>() < prob {
                edges.push((i, j));
            }
        }
    }
    let (graph, _) = Graph::from_edges(params.n, edges)?;
    let truth = GroundTruth::new(labels, params.r)?;
    Ok((graph, truth))
}

/// The implicit `n x n` reweighted adjacency.
#[derive(Debug, Clone)]
pub struct ModifiedAdjacency {
    graph: Graph,
    w_in: f64,
    w_out: f64,
}

impl ModifiedAdjacency {
    /// Builds `M(G, p, q)` after clamping `p` and `q`. Disassortative
    /// parameters (`p <= q`) are accepted with a warning.
    pub fn new(graph: Graph, p: f64, q: f64) -> Self {
        let (p, q) = (clamp_prob(p), clamp_prob(q));
        if p <= q {
            warn!("p = {p} <= q = {q}: disassortative edge weights");
        }
        ModifiedAdjacency {
            graph,
            w_in: (p / q).ln(),
            w_out: ((1.0 - p) / (1.0 - q)).ln(),
        }
    }

    /// Builds the kernel directly from its two weights.
    pub fn from_weights(graph: Graph, w_in: f64, w_out: f64) -> Self {
        ModifiedAdjacency { graph, w_in, w_out }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    /// Weight on edges, `ln(p/q)`.
    pub fn w_in(&self) -> f64 {
        self.w_in
    }

    /// Weight on non-edges, `ln((1-p)/(1-q))`.
    pub fn w_out(&self) -> f64 {
        self.w_out
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else if self.graph.has_edge(i, j) {
            self.w_in
        } else {
            self.w_out
        }
    }

    /// `M v` in `O(|E| + n)` without materializing `M`.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n() {
            return Err(Error::dim(self.n(), v.len()));
        }
        let total: f64 = v.iter().sum();
        let gap = self.w_in - self.w_out;
        Ok((0..self.n())
            .map(|i| {
                let adj: f64 = self.graph.adjacency[i].iter().map(|&j| v[j]).sum();
                gap * adj + self.w_out * (total - v[i])
            })
            .collect())
    }

    /// `M X` for a row-major `n x d` block, one pass over the edges.
    pub fn apply_rows(&self, x: &[f64], d: usize) -> Result<Vec<f64>> {
        let n = self.n();
        if x.len() != n * d {
            return Err(Error::dim(n * d, x.len()));
        }
        let mut colsum = vec![0.0; d];
        for row in x.chunks_exact(d.max(1)) {
            for (s, v) in colsum.iter_mut().zip(row) {
                *s += v;
            }
        }
        let gap = self.w_in - self.w_out;
        let mut out = vec![0.0; n * d];
        for i in 0..n {
            let out_i = &mut out[i * d..(i + 1) * d];
            for &j in &self.graph.adjacency[i] {
                for (o, v) in out_i.iter_mut().zip(&x[j * d..(j + 1) * d]) {
                    *o += v;
                }
            }
            let x_i = &x[i * d..(i + 1) * d];
            for k in 0..d {
                out_i[k] = gap * out_i[k] + self.w_out * (colsum[k] - x_i[k]);
            }
        }
        Ok(out)
    }

    /// Dense row-major copy. Intended for small instances and oracles.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n();
        let mut dense = vec![self.w_out; n * n];
        for i in 0..n {
            dense[i * n + i] = 0.0;
        }
        for &(u, v) in &self.graph.edges {
            dense[u * n + v] = self.w_in;
            dense[v * n + u] = self.w_in;
        }
        dense
    }
}

/// Add-one smoothed plug-in estimate of `(p, q)` from the labeled pairs.
///
/// A parameter with no supporting pairs falls back to the matching entry of
/// `fallback`; without one that is an estimation error.
pub fn estimate_params(
    graph: &Graph,
    labeled: &[(usize, usize)],
    fallback: Option<(f64, f64)>,
) -> Result<(f64, f64)> {
    let mut label_of = vec![None; graph.n()];
    for &(node, label) in labeled {
        if node >= graph.n() {
            return Err(Error::Input(format!("labeled node {node} out of range")));
        }
        label_of[node] = Some(label);
    }
    let mut group_sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for label in label_of.iter().flatten() {
        *group_sizes.entry(*label).or_default() += 1;
    }
    let k: u64 = group_sizes.values().sum();
    let pairs_in: u64 = group_sizes.values().map(|g| g * g.saturating_sub(1) / 2).sum();
    let pairs_out = k * k.saturating_sub(1) / 2 - pairs_in;

    let (mut e_in, mut e_out) = (0u64, 0u64);
    for &(u, v) in graph.edges() {
        if let (Some(a), Some(b)) = (label_of[u], label_of[v]) {
            if a == b {
                e_in += 1;
            } else {
                e_out += 1;
            }
        }
    }

    let smoothed = |edges: u64, pairs: u64| (edges as f64 + 1.0) / (pairs as f64 + 2.0);
    let p_hat = match (pairs_in, fallback) {
        (0, Some((p, _))) => p,
        (0, None) => {
            return Err(Error::Estimation(
                "no labeled within-community pairs and no fallback".into(),
            ))
        }
        _ => smoothed(e_in, pairs_in),
    };
    let q_hat = match (pairs_out, fallback) {
        (0, Some((_, q))) => q,
        (0, None) => {
            return Err(Error::Estimation(
                "no labeled between-community pairs and no fallback".into(),
            ))
        }
        _ => smoothed(e_out, pairs_out),
    };
    Ok((clamp_prob(p_hat), clamp_prob(q_hat)))
}

/// Result of [`read_edge_list`].
#[derive(Debug, Clone)]
pub struct Ingested {
    pub graph: Graph,
    pub truth: GroundTruth,
    pub cleanup: EdgeCleanup,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num(path: &Path, line: usize, token: &str) -> Result<usize> {
    token.trim().parse().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("expected a non-negative integer, found {token:?}"),
    })
}

/// Reads an edge list (`n` on the first line, then `u v` per line) and a
/// `node,label` CSV. When `r` is `None` it is taken as the largest label + 1.
pub fn read_edge_list(
    edges_path: impl AsRef<Path>,
    labels_path: impl AsRef<Path>,
    r: Option<usize>,
) -> Result<Ingested> {
    let edges_path = edges_path.as_ref();
    let labels_path = labels_path.as_ref();
    let text = fs::read_to_string(edges_path).map_err(|e| Error::io(edges_path, e))?;
    let mut lines = content_lines(&text);
    let (first_line, header) = lines.next().ok_or_else(|| Error::Parse {
        path: edges_path.to_path_buf(),
        line: 1,
        message: "missing node count".into(),
    })?;
    let n = parse_num(edges_path, first_line, header)?;

    let mut pairs = Vec::new();
    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        let (Some(u), Some(v), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                path: edges_path.to_path_buf(),
                line,
                message: format!("expected two node indices, found {content:?}"),
            });
        };
        let (u, v) = (parse_num(edges_path, line, u)?, parse_num(edges_path, line, v)?);
        if u >= n || v >= n {
            return Err(Error::Parse {
                path: edges_path.to_path_buf(),
                line,
                message: format!("node index out of range for n = {n}"),
            });
        }
        pairs.push((u, v));
    }
    let (graph, cleanup) = Graph::from_edges(n, pairs)?;
    if cleanup.self_loops > 0 {
        warn!("{}: dropped {} self-loops", edges_path.display(), cleanup.self_loops);
    }
    if cleanup.duplicates > 0 {
        warn!("{}: dropped {} duplicate edges", edges_path.display(), cleanup.duplicates);
    }

    let text = fs::read_to_string(labels_path).map_err(|e| Error::io(labels_path, e))?;
    let mut labels: Vec<Option<usize>> = vec![None; n];
    for (line, content) in content_lines(&text) {
        let Some((node, label)) = content.split_once(',') else {
            return Err(Error::Parse {
                path: labels_path.to_path_buf(),
                line,
                message: format!("expected \"node,label\", found {content:?}"),
            });
        };
        let node = parse_num(labels_path, line, node)?;
        let label = parse_num(labels_path, line, label)?;
        if node >= n {
            return Err(Error::Parse {
                path: labels_path.to_path_buf(),
                line,
                message: format!("node {node} out of range for n = {n}"),
            });
        }
        if let Some(r) = r {
            if label >= r {
                return Err(Error::LabelRange { label, r });
            }
        }
        match labels[node] {
            Some(prev) if prev != label => {
                return Err(Error::Parse {
                    path: labels_path.to_path_buf(),
                    line,
                    message: format!("node {node} relabeled from {prev} to {label}"),
                })
            }
            _ => labels[node] = Some(label),
        }
    }
    let missing: Vec<usize> = (0..n).filter(|&i| labels[i].is_none()).collect();
    if !missing.is_empty() {
        return Err(Error::Input(format!(
            "{} nodes have no label (first: {})",
            missing.len(),
            missing[0]
        )));
    }
    let labels: Vec<usize> = labels.into_iter().flatten().collect();
    let r = r.unwrap_or_else(|| labels.iter().max().map_or(2, |m| (m + 1).max(2)));
    let truth = GroundTruth::new(labels, r)?;
    Ok(Ingested {
        graph,
        truth,
        cleanup,
    })
}

/// Writes `graph` and `truth` in the formats read by [`read_edge_list`].
pub fn write_edge_list(
    graph: &Graph,
    truth: &GroundTruth,
    edges_path: impl AsRef<Path>,
    labels_path: impl AsRef<Path>,
) -> Result<()> {
    let edges_path = edges_path.as_ref();
    let labels_path = labels_path.as_ref();
    let mut out = format!("{}\n", graph.n());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    write_file(edges_path, out.as_bytes())?;
    let mut out = String::new();
    for (node, label) in truth.labels().iter().enumerate() {
        out.push_str(&format!("{node},{label}\n"));
    }
    write_file(labels_path, out.as_bytes())
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(bytes).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen::<f64>() < density {
                    pairs.push((i, j));
                }
            }
        }
        Graph::from_edges(n, pairs).unwrap().0
    }

    #[test]
    fn degenerate_probabilities_give_cliques() {
        let params = SbmParams::new(6, 2, 1.0, 0.0).unwrap();
        let (graph, truth) = sbm_sample(&params, 3).unwrap();
        for i in 0..6 {
            for j in (i + 1)..6 {
                let same = truth.reveal(i) == truth.reveal(j);
                assert_eq!(graph.has_edge(i, j), same, "pair ({i}, {j})");
            }
        }
    }

    #[test]
    fn zero_probabilities_give_empty_graph() {
        let params = SbmParams::new(20, 3, 0.0, 0.0).unwrap();
        let (graph, _) = sbm_sample(&params, 1).unwrap();
        assert_eq!(graph.edge_count(), 0);
    }

    #[test]
    fn invalid_probability_rejected() {
        assert!(matches!(
            SbmParams::new(10, 2, 1.5, 0.1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(SbmParams::new(10, 1, 0.5, 0.1), Err(Error::Parameter(_))));
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let params = SbmParams::sparse(200, 3, 6.0, 1.0).unwrap();
        let a = sbm_sample(&params, 42).unwrap();
        let b = sbm_sample(&params, 42).unwrap();
        assert_eq!(a, b);
        let c = sbm_sample(&params, 43).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn snr_of_below_threshold_setting() {
        let params = SbmParams::sparse(500, 2, 5.0, 2.0).unwrap();
        assert!((params.snr().unwrap() - 9.0 / 14.0).abs() < 1e-15);
        assert_eq!(SbmParams::new(10, 2, 0.5, 0.1).unwrap().snr(), None);
    }

    #[test]
    fn modified_entries() {
        let (graph, _) = Graph::from_edges(3, [(0, 1)]).unwrap();
        let m = ModifiedAdjacency::new(graph.clone(), 0.5, 0.25);
        assert!((m.entry(0, 1) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(m.entry(1, 1), 0.0);

        let m = ModifiedAdjacency::new(graph.clone(), 0.8, 0.2);
        assert!((m.entry(0, 2) + 4f64.ln()).abs() < 1e-15);
        assert!(m.w_in() > 0.0 && m.w_out() < 0.0);

        let m = ModifiedAdjacency::new(graph, 0.3, 0.3);
        assert_eq!(m.entry(0, 1), 0.0);
        assert_eq!(m.entry(0, 2), 0.0);
    }

    #[test]
    fn clamping_keeps_weights_finite() {
        let (graph, _) = Graph::from_edges(2, [(0, 1)]).unwrap();
        let m = ModifiedAdjacency::new(graph, 1.0, 0.0);
        assert!(m.w_in().is_finite() && m.w_out().is_finite());
    }

    #[test]
    fn matvec_on_empty_graph() {
        let m = ModifiedAdjacency::from_weights(Graph::empty(5), 1.3, 0.0);
        assert_eq!(m.matvec(&[1.0, -2.0, 3.0, 0.5, 4.0]).unwrap(), vec![0.0; 5]);
    }

    #[test]
    fn matvec_of_ones_counts_degrees() {
        let graph = random_graph(12, 0.3, 9);
        let m = ModifiedAdjacency::new(graph.clone(), 0.4, 0.1);
        let out = m.matvec(&[1.0; 12]).unwrap();
        for (i, value) in out.iter().enumerate() {
            let d = graph.degree(i) as f64;
            let expected = m.w_in() * d + m.w_out() * (11.0 - d);
            assert!((value - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn matvec_matches_dense_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let graph = random_graph(7, 0.4, 11);
        let m = ModifiedAdjacency::new(graph, 0.35, 0.12);
        let dense = m.to_dense();
        let v: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let fast = m.matvec(&v).unwrap();
        for i in 0..7 {
            let slow: f64 = (0..7).map(|j| dense[i * 7 + j] * v[j]).sum();
            assert!((fast[i] - slow).abs() < 1e-12);
        }
        assert!(matches!(m.matvec(&[1.0; 3]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn estimate_from_single_labeled_edge() {
        let (graph, _) = Graph::from_edges(4, [(0, 1)]).unwrap();
        let (p, q) = estimate_params(&graph, &[(0, 0), (1, 0)], Some((0.1, 0.05))).unwrap();
        assert!((p - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(q, 0.05);
        assert!(matches!(
            estimate_params(&graph, &[(0, 0), (1, 0)], None),
            Err(Error::Estimation(_))
        ));
    }

    #[test]
    fn estimate_falls_back_without_labels() {
        let graph = random_graph(10, 0.3, 1);
        assert_eq!(
            estimate_params(&graph, &[], Some((0.1, 0.05))).unwrap(),
            (0.1, 0.05)
        );
        assert!(estimate_params(&graph, &[], None).is_err());
    }

    #[test]
    fn estimate_on_two_cliques() {
        // Two triangles {0,1,2} and {3,4,5}: 6 within pairs all present, 9 between pairs absent.
        let params = SbmParams::new(6, 2, 1.0, 0.0).unwrap();
        let truth = GroundTruth::new(vec![0, 0, 0, 1, 1, 1], 2).unwrap();
        let pairs = (0..6)
            .flat_map(|i| ((i + 1)..6).map(move |j| (i, j)))
            .filter(|&(i, j)| truth.reveal(i) == truth.reveal(j));
        let (graph, _) = Graph::from_edges(params.n, pairs).unwrap();
        let labeled: Vec<_> = truth.labels().iter().copied().enumerate().collect();
        let (p, q) = estimate_params(&graph, &labeled, None).unwrap();
        assert!((p - 7.0 / 8.0).abs() < 1e-15);
        assert!((q - 1.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn reads_edge_list_and_labels() {
        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("g.txt");
        let labels = dir.path().join("l.csv");
        fs::write(&edges, "3\n0 1\n1 2\n").unwrap();
        fs::write(&labels, "0,0\n1,0\n2,1\n").unwrap();
        let ingested = read_edge_list(&edges, &labels, None).unwrap();
        assert_eq!(ingested.graph.n(), 3);
        assert_eq!(ingested.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(ingested.truth.labels(), &[0, 0, 1]);
        assert_eq!(ingested.truth.r(), 2);
    }

    #[test]
    fn drops_self_loops_and_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("g.txt");
        let labels = dir.path().join("l.csv");
        fs::write(&edges, "# comment\n3\n0 0\n0 1\n0 1\n1 0\n").unwrap();
        fs::write(&labels, "0,0\n1,1\n2,1\n").unwrap();
        let ingested = read_edge_list(&edges, &labels, Some(2)).unwrap();
        assert_eq!(ingested.cleanup.self_loops, 1);
        assert_eq!(ingested.cleanup.duplicates, 2);
        assert_eq!(ingested.graph.edges(), &[(0, 1)]);
    }

    #[test]
    fn ingestion_errors() {
        let dir = tempfile::tempdir().unwrap();
        let edges = dir.path().join("g.txt");
        let labels = dir.path().join("l.csv");
        fs::write(&edges, "3\n0 1\n1 x\n").unwrap();
        fs::write(&labels, "0,0\n1,0\n2,1\n").unwrap();
        match read_edge_list(&edges, &labels, None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }

        fs::write(&edges, "3\n0 1\n").unwrap();
        fs::write(&labels, "0,0\n1,0\n2,5\n").unwrap();
        assert!(matches!(
            read_edge_list(&edges, &labels, Some(2)),
            Err(Error::LabelRange { label: 5, r: 2 })
        ));

        fs::write(&labels, "0,0\n2,1\n").unwrap();
        assert!(matches!(
            read_edge_list(&edges, &labels, Some(2)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let params = SbmParams::sparse(40, 3, 6.0, 1.0).unwrap();
        let (graph, truth) = sbm_sample(&params, 5).unwrap();
        let (e, l) = (dir.path().join("e"), dir.path().join("l"));
        write_edge_list(&graph, &truth, &e, &l).unwrap();
        let back = read_edge_list(&e, &l, Some(3)).unwrap();
        assert_eq!(back.graph, graph);
        assert_eq!(back.truth, truth);
    }
}
