//! Label-constrained SDP over unit-diagonal Gram matrices, solved through a
//! low-rank factor `X` (`n x d`, unit rows).
//!
//! The objective is `Tr(X^T M X)`. Supervised rows are pinned to their simplex
//! vertex, which enforces the Gram constraints between labeled nodes exactly.
//! Free rows move by Riemannian gradient ascent on the product of spheres:
//! the Euclidean gradient `2 M X` is projected row-wise onto the tangent
//! space, a step is taken, and rows are renormalized (retraction). A
//! Barzilai-Borwein trial step followed by Armijo backtracking keeps the
//! objective sequence non-decreasing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::ModifiedAdjacency;
use crate::simplex::{dot, SimplexBasis};

const NORM_TOL: f64 = 1e-8;

/// `n` unit rows of dimension `dim`; pinned rows carry their label.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorLabeling {
    rows: Vec<f64>,
    dim: usize,
    pinned: Vec<Option<usize>>,
}

impl VectorLabeling {
    /// Wraps row-major `rows`, checking that every row has unit norm.
    pub fn new(rows: Vec<f64>, dim: usize, pinned: Vec<Option<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("dimension must be positive".into()));
        }
        if rows.len() != pinned.len() * dim {
            return Err(Error::dim(pinned.len() * dim, rows.len()));
        }
        for (i, row) in rows.chunks_exact(dim).enumerate() {
            let norm = dot(row, row).sqrt();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::Input(format!("row {i} has norm {norm}")));
            }
        }
        Ok(VectorLabeling { rows, dim, pinned })
    }

    /// Normalizes every row; a zero row is an input error. Nothing is pinned.
    pub fn from_rows_normalized(mut rows: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 || !rows.len().is_multiple_of(dim) {
            return Err(Error::Input(format!(
                "{} values do not form rows of dimension {dim}",
                rows.len()
            )));
        }
        for (i, row) in rows.chunks_exact_mut(dim).enumerate() {
            let norm = dot(row, row).sqrt();
            if norm < 1e-300 {
                return Err(Error::Input(format!("row {i} is zero")));
            }
            row.iter_mut().for_each(|x| *x /= norm);
        }
        let n = rows.len() / dim;
        Ok(VectorLabeling {
            rows,
            dim,
            pinned: vec![None; n],
        })
    }

    /// Embeds a hard labeling: row `i` is vertex `labels[i]`. Nodes with
    /// `labeled[i]` set are pinned.
    pub fn embed(labels: &[usize], labeled: &[bool], basis: &SimplexBasis) -> Result<Self> {
        if labels.len() != labeled.len() {
            return Err(Error::dim(labels.len(), labeled.len()));
        }
        let mut rows = Vec::with_capacity(labels.len() * basis.dim());
        for &label in labels {
            if label >= basis.r() {
                return Err(Error::LabelRange { label, r: basis.r() });
            }
            rows.extend_from_slice(basis.vector(label));
        }
        let pinned = labels
            .iter()
            .zip(labeled)
            .map(|(&l, &is)| is.then_some(l))
            .collect();
        Ok(VectorLabeling {
            rows,
            dim: basis.dim(),
            pinned,
        })
    }

    pub fn n(&self) -> usize {
        self.pinned.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.rows
    }

    pub fn pinned(&self, i: usize) -> Option<usize> {
        self.pinned[i]
    }

    pub fn pinned_mask(&self) -> Vec<bool> {
        self.pinned.iter().map(Option::is_some).collect()
    }

    /// Pinned `(node, label)` pairs in node order.
    pub fn pins(&self) -> Vec<(usize, usize)> {
        self.pinned
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|l| (i, l)))
            .collect()
    }

    /// Copy with row `i` replaced by vertex `label` and pinned there.
    pub fn with_row_pinned(&self, i: usize, label: usize, basis: &SimplexBasis) -> Self {
        let mut out = self.clone();
        out.rows[i * self.dim..(i + 1) * self.dim].copy_from_slice(basis.vector(label));
        out.pinned[i] = Some(label);
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Factor rank `d`; `None` picks `max(r + 1, ceil(sqrt(2n)))`.
    pub rank: Option<usize>,
    pub max_iters: usize,
    /// Stop once the Riemannian gradient norm drops below this; `None` means `1e-6 n`.
    pub grad_tol: Option<f64>,
    pub restarts: usize,
    pub seed: u64,
    /// Used as the first initialization when present.
    pub warm_start: Option<VectorLabeling>,
    /// Step shrink factor for backtracking.
    pub backtrack: f64,
    /// First trial step, as the largest per-row displacement (radians, roughly).
    pub initial_step: f64,
    /// Armijo constant.
    pub sufficient_increase: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            rank: None,
            max_iters: 2000,
            grad_tol: None,
            restarts: 5,
            seed: 0,
            warm_start: None,
            backtrack: 0.5,
            initial_step: 1.0,
            sufficient_increase: 1e-4,
        }
    }
}

impl SolverConfig {
    pub fn resolve_rank(&self, n: usize, r: usize) -> usize {
        self.rank
            .unwrap_or_else(|| (r + 1).max((2.0 * n as f64).sqrt().ceil() as usize))
    }

    pub fn resolve_grad_tol(&self, n: usize) -> f64 {
        self.grad_tol.unwrap_or(1e-6 * n as f64)
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub x: VectorLabeling,
    pub objective: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub restart_index: usize,
    /// Objective after every accepted step of the winning run, starting at the initial point.
    pub history: Vec<f64>,
}

/// `Tr(X^T M X) = sum_{i != j} M_ij <X_i, X_j>`.
pub fn trace_score(m: &ModifiedAdjacency, x: &VectorLabeling) -> Result<f64> {
    if x.n() != m.n() {
        return Err(Error::dim(m.n(), x.n()));
    }
    let mx = m.apply_rows(x.as_slice(), x.dim())?;
    Ok(dot(x.as_slice(), &mx))
}

/// Riemannian ascent direction: row-wise tangent projection of `2 M X`,
/// zero on pinned rows.
pub fn riemannian_gradient(m: &ModifiedAdjacency, x: &VectorLabeling) -> Result<Vec<f64>> {
    if x.n() != m.n() {
        return Err(Error::dim(m.n(), x.n()));
    }
    let mx = m.apply_rows(x.as_slice(), x.dim())?;
    let free: Vec<bool> = x.pinned.iter().map(Option::is_none).collect();
    Ok(tangent_gradient(x.as_slice(), &mx, x.dim(), &free))
}

fn tangent_gradient(x: &[f64], mx: &[f64], d: usize, free: &[bool]) -> Vec<f64> {
    let mut grad = vec![0.0; x.len()];
    for (i, is_free) in free.iter().enumerate() {
        if !is_free {
            continue;
        }
        let (xi, gi) = (&x[i * d..(i + 1) * d], &mx[i * d..(i + 1) * d]);
        let radial = 2.0 * dot(xi, gi);
        for k in 0..d {
            grad[i * d + k] = 2.0 * gi[k] - radial * xi[k];
        }
    }
    grad
}

fn validate_pins(pins: &[(usize, usize)], n: usize, r: usize) -> Result<Vec<Option<usize>>> {
    let mut pinned = vec![None; n];
    for &(node, label) in pins {
        if node >= n {
            return Err(Error::Input(format!("pinned node {node} out of range for n = {n}")));
        }
        if label >= r {
            return Err(Error::LabelRange { label, r });
        }
        match pinned[node] {
            Some(prev) if prev != label => {
                return Err(Error::Input(format!(
                    "node {node} pinned to both {prev} and {label}"
                )))
            }
            _ => pinned[node] = Some(label),
        }
    }
    Ok(pinned)
}

/// Maximizes `Tr(X^T M X)` over unit rows with `pins` fixed to `basis`
/// vertices. The factor rank is `basis.dim()`.
pub fn solve_sdp(
    m: &ModifiedAdjacency,
    pins: &[(usize, usize)],
    basis: &SimplexBasis,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    let n = m.n();
    let (d, r) = (basis.dim(), basis.r());
    if d < r {
        return Err(Error::Parameter(format!("factor rank {d} must be at least r = {r}")));
    }
    if let Some(rank) = cfg.rank {
        if rank != d {
            return Err(Error::dim(rank, d));
        }
    }
    if cfg.restarts == 0 {
        return Err(Error::Parameter("restarts must be at least 1".into()));
    }
    if let Some(warm) = &cfg.warm_start {
        if warm.n() != n {
            return Err(Error::dim(n, warm.n()));
        }
        if warm.dim() != d {
            return Err(Error::dim(d, warm.dim()));
        }
    }
    let pinned = validate_pins(pins, n, r)?;
    let tol = cfg.resolve_grad_tol(n);

    let runs: Vec<Run> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut x = match (&cfg.warm_start, restart) {
                (Some(warm), 0) => warm.rows.clone(),
                _ => random_rows(n, d, cfg.seed, restart as u64),
            };
            for (i, p) in pinned.iter().enumerate() {
                if let Some(label) = p {
                    x[i * d..(i + 1) * d].copy_from_slice(basis.vector(*label));
                }
            }
            ascend(m, x, d, &pinned, tol, cfg)
        })
        .collect::<Result<_>>()?;

    let (restart_index, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.objective > a.1.objective { b } else { a })
        .expect("at least one restart");
    Ok(SolveResult {
        x: VectorLabeling {
            rows: best.x,
            dim: d,
            pinned,
        },
        objective: best.objective,
        grad_norm: best.grad_norm,
        iterations: best.iterations,
        restart_index,
        history: best.history,
    })
}

fn random_rows(n: usize, d: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut x: Vec<f64> = (0..n * d).map(|_| StandardNormal.sample(&mut rng)).collect();
    for row in x.chunks_exact_mut(d) {
        let norm = dot(row, row).sqrt().max(1e-300);
        row.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

struct Run {
    x: Vec<f64>,
    objective: f64,
    grad_norm: f64,
    iterations: usize,
    history: Vec<f64>,
}

fn retract(x: &[f64], dir: &[f64], step: f64, d: usize, free: &[bool]) -> Vec<f64> {
    let mut out = x.to_vec();
    for (i, is_free) in free.iter().enumerate() {
        if !is_free {
            continue;
        }
        let row = &mut out[i * d..(i + 1) * d];
        for (v, g) in row.iter_mut().zip(&dir[i * d..(i + 1) * d]) {
            *v += step * g;
        }
        let norm = dot(row, row).sqrt();
        row.iter_mut().for_each(|v| *v /= norm);
    }
    out
}

fn ascend(
    m: &ModifiedAdjacency,
    mut x: Vec<f64>,
    d: usize,
    pinned: &[Option<usize>],
    tol: f64,
    cfg: &SolverConfig,
) -> Result<Run> {
    let free: Vec<bool> = pinned.iter().map(Option::is_none).collect();
    let mut mx = m.apply_rows(&x, d)?;
    let mut objective = dot(&x, &mx);
    let mut history = vec![objective];
    let mut grad = tangent_gradient(&x, &mx, d, &free);
    let mut grad_sq = dot(&grad, &grad);
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut last_step = 0.0;
    let mut iterations = 0;

    while iterations < cfg.max_iters && grad_sq.sqrt() > tol {
        let mut step = match &prev {
            Some((px, pg)) => {
                let (mut ss, mut sy) = (0.0, 0.0);
                for k in 0..x.len() {
                    let s = x[k] - px[k];
                    ss += s * s;
                    sy += s * (grad[k] - pg[k]);
                }
                let bb = ss / sy.abs();
                if bb.is_finite() && bb > 0.0 {
                    bb
                } else {
                    2.0 * last_step
                }
            }
            None => {
                let max_row = grad
                    .chunks_exact(d)
                    .map(|g| dot(g, g).sqrt())
                    .fold(0.0, f64::max);
                cfg.initial_step / max_row
            }
        };

        let mut accepted = None;
        while step > 1e-300 && step.is_finite() {
            let candidate = retract(&x, &grad, step, d, &free);
            let candidate_mx = m.apply_rows(&candidate, d)?;
            let value = dot(&candidate, &candidate_mx);
            if value >= objective + cfg.sufficient_increase * step * grad_sq {
                accepted = Some((candidate, candidate_mx, value));
                break;
            }
            step *= cfg.backtrack;
        }
        let Some((candidate, candidate_mx, value)) = accepted else {
            break;
        };
        prev = Some((std::mem::replace(&mut x, candidate), std::mem::take(&mut grad)));
        mx = candidate_mx;
        objective = value;
        history.push(objective);
        grad = tangent_gradient(&x, &mx, d, &free);
        grad_sq = dot(&grad, &grad);
        last_step = step;
        iterations += 1;
    }
    Ok(Run {
        x,
        objective,
        grad_norm: grad_sq.sqrt(),
        iterations,
        history,
    })
}

/// Solver output ready for rounding, or flagged as needing a fitted simplex
/// because the pins do not cover all `r` labels.
#[derive(Debug, Clone)]
pub enum Extracted {
    Aligned(VectorLabeling),
    NeedsBestFit(VectorLabeling),
}

/// Pinning already aligns the factor with the canonical simplex; this only
/// reports whether that alignment pins down all `r` vertices.
pub fn extract_solution(result: SolveResult, r: usize) -> Extracted {
    let mut seen = vec![false; r];
    for (_, label) in result.x.pins() {
        if label < r {
            seen[label] = true;
        }
    }
    if seen.iter().all(|&s| s) {
        Extracted::Aligned(result.x)
    } else {
        Extracted::NeedsBestFit(result.x)
    }
}
