//! Test-side oracles. Nothing here calls into the library's own likelihood
//! or alignment code, so agreement is an independent check.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use sbmcd::{Graph, SbmParams};

pub const EPS: f64 = 1e-6;

pub fn clamp(p: f64) -> f64 {
    p.clamp(EPS, 1.0 - EPS)
}

/// `ln P[G | labels]` as a product of independent Bernoulli pair terms.
pub fn bernoulli_ll(graph: &Graph, p: f64, q: f64, labels: &[usize]) -> f64 {
    let (p, q) = (clamp(p), clamp(q));
    let n = graph.n();
    let (mut e_in, mut e_out, mut pairs_in, mut pairs_out) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        for j in (i + 1)..n {
            let edge = if graph.has_edge(i, j) { 1.0 } else { 0.0 };
            if labels[i] == labels[j] {
                pairs_in += 1.0;
                e_in += edge;
            } else {
                pairs_out += 1.0;
                e_out += edge;
            }
        }
    }
    e_in * p.ln() + (pairs_in - e_in) * (1.0 - p).ln() + e_out * q.ln()
        + (pairs_out - e_out) * (1.0 - q).ln()
}

/// Every assignment of `r` labels to `n` nodes, lexicographic.
pub fn all_labelings(n: usize, r: usize) -> Vec<Vec<usize>> {
    let total = r.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut labels = vec![0; n];
            for slot in labels.iter_mut().rev() {
                *slot = code % r;
                code /= r;
            }
            labels
        })
        .collect()
}

/// Small random SBM instance with `p > q`.
pub fn random_instance(n: usize, r: usize, rng: &mut ChaCha8Rng) -> (Graph, Vec<usize>, f64, f64) {
    let p = rng.gen_range(0.4..0.9);
    let q = rng.gen_range(0.05..0.35);
    let params = SbmParams::new(n, r, p, q).unwrap();
    let (graph, truth) = sbmcd::sbm_sample(&params, rng.gen()).unwrap();
    (graph, truth.labels().to_vec(), p, q)
}

pub fn gaussian(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn normalize_rows(rows: &mut [f64], d: usize) {
    for row in rows.chunks_exact_mut(d) {
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        row.iter_mut().for_each(|v| *v /= norm);
    }
}

pub fn random_unit_rows(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut rows = gaussian(rng, n * d);
    normalize_rows(&mut rows, d);
    rows
}

/// Haar-ish random orthogonal `d x d` matrix from a QR factorization.
pub fn random_rotation(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_row_slice(d, d, &gaussian(rng, d * d));
    g.qr().q()
}

/// Row-major `rows` (n x d) times `rot` (d x d).
pub fn rotate_rows(rows: &[f64], d: usize, rot: &DMatrix<f64>) -> Vec<f64> {
    let x = DMatrix::from_row_slice(rows.len() / d, d, rows);
    let y = x * rot;
    let mut out = Vec::with_capacity(rows.len());
    for i in 0..y.nrows() {
        for k in 0..d {
            out.push(y[(i, k)]);
        }
    }
    out
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    (dot(a, b) / (dot(a, a).sqrt() * dot(b, b).sqrt())).clamp(-1.0, 1.0).acos()
}

pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(r - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, r - 1);
            out.push(p);
        }
    }
    out
}

/// Largest per-vertex angle after the matching that minimizes it.
pub fn matched_max_angle(found: &[f64], truth: &[f64], r: usize, d: usize) -> f64 {
    permutations(r)
        .into_iter()
        .map(|perm| {
            (0..r)
                .map(|k| angle(&found[perm[k] * d..(perm[k] + 1) * d], &truth[k * d..(k + 1) * d]))
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Dense `Tr(X^T M X)` by double sum.
pub fn dense_trace(graph: &Graph, p: f64, q: f64, rows: &[f64], d: usize) -> f64 {
    let (p, q) = (clamp(p), clamp(q));
    let (w_in, w_out) = ((p / q).ln(), ((1.0 - p) / (1.0 - q)).ln());
    let n = graph.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = if graph.has_edge(i, j) { w_in } else { w_out };
            total += w * dot(&rows[i * d..(i + 1) * d], &rows[j * d..(j + 1) * d]);
        }
    }
    total
}

/// Noisy copies of a randomly rotated regular simplex: returns
/// `(rows, planted labels, true vertices)`.
pub fn noisy_simplex_rows(
    n: usize,
    r: usize,
    d: usize,
    sigma: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, Vec<usize>, Vec<f64>) {
    let canonical = sbmcd::canonical_simplex(r, d).unwrap();
    let rot = random_rotation(d, rng);
    let vertices = rotate_rows(canonical.as_slice(), d, &rot);
    let labels: Vec<usize> = (0..n).map(|i| i % r).collect();
    let mut rows = Vec::with_capacity(n * d);
    for &label in &labels {
        let noise = gaussian(rng, d);
        rows.extend(
            vertices[label * d..(label + 1) * d]
                .iter()
                .zip(noise)
                .map(|(v, e)| v + sigma * e),
        );
    }
    normalize_rows(&mut rows, d);
    (rows, labels, vertices)
}
