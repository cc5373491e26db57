//! Spherical k-means on unit vectors: assignment by largest inner product,
//! centroids renormalized to unit length after every update.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        KMeansConfig {
            restarts: 20,
            max_iters: 100,
            seed: 0,
        }
    }
}

/// Centroids (`k x dim`, row-major) and per-point assignments.
#[derive(Debug, Clone)]
pub struct Clustering {
    pub centroids: Vec<f64>,
    pub assignments: Vec<usize>,
    /// Sum over points of the inner product with their centroid.
    pub cohesion: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = dot(v, v).sqrt();
    if norm < 1e-12 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

fn nearest(centroids: &[f64], dim: usize, point: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (c, centroid) in centroids.chunks_exact(dim).enumerate() {
        let s = dot(centroid, point);
        if s > best.1 {
            best = (c, s);
        }
    }
    best
}

/// k-means++ seeding with the chordal distance `2 - 2 cos`.
fn seed_centroids(points: &[f64], dim: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = points.len() / dim;
    let mut centroids = Vec::with_capacity(k * dim);
    let first = rng.gen_range(0..n);
    centroids.extend_from_slice(&points[first * dim..(first + 1) * dim]);
    let mut dist: Vec<f64> = points
        .chunks_exact(dim)
        .map(|p| (2.0 - 2.0 * dot(p, &centroids[..dim])).max(0.0))
        .collect();
    for _ in 1..k {
        let total: f64 = dist.iter().sum();
        let pick = if total <= 0.0 {
            rng.gen_range(0..n)
        } else {
            let mut target = rng.gen::<f64>() * total;
            let mut chosen = n - 1;
            for (i, d) in dist.iter().enumerate() {
                if target < *d {
                    chosen = i;
                    break;
                }
                target -= d;
            }
            chosen
        };
        let start = centroids.len();
        centroids.extend_from_slice(&points[pick * dim..(pick + 1) * dim]);
        for (i, p) in points.chunks_exact(dim).enumerate() {
            dist[i] = dist[i].min((2.0 - 2.0 * dot(p, &centroids[start..])).max(0.0));
        }
    }
    centroids
}

fn lloyd(points: &[f64], dim: usize, k: usize, mut centroids: Vec<f64>, max_iters: usize) -> Clustering {
    let n = points.len() / dim;
    let mut assignments = vec![usize::MAX; n];
    for _ in 0..max_iters {
        let mut changed = false;
        for (i, p) in points.chunks_exact(dim).enumerate() {
            let (c, _) = nearest(&centroids, dim, p);
            if assignments[i] != c {
                assignments[i] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = vec![0.0; k * dim];
        let mut counts = vec![0usize; k];
        for (i, p) in points.chunks_exact(dim).enumerate() {
            let c = assignments[i];
            counts[c] += 1;
            for (s, x) in sums[c * dim..(c + 1) * dim].iter_mut().zip(p) {
                *s += x;
            }
        }
        for c in 0..k {
            let sum = &mut sums[c * dim..(c + 1) * dim];
            if counts[c] == 0 || !normalize(sum) {
                // Empty or degenerate cluster: re-seed at the worst-served point.
                let (worst, _) = points
                    .chunks_exact(dim)
                    .enumerate()
                    .map(|(i, p)| (i, dot(p, &centroids[assignments[i] * dim..(assignments[i] + 1) * dim])))
                    .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
                sum.copy_from_slice(&points[worst * dim..(worst + 1) * dim]);
                assignments[worst] = c;
            }
        }
        centroids = sums;
    }
    let cohesion = points
        .chunks_exact(dim)
        .enumerate()
        .map(|(i, p)| {
            let (c, s) = nearest(&centroids, dim, p);
            assignments[i] = c;
            s
        })
        .sum();
    Clustering {
        centroids,
        assignments,
        cohesion,
    }
}

/// Best of `cfg.restarts` seeded runs by cohesion; ties go to the earlier restart.
pub fn spherical_kmeans(points: &[f64], dim: usize, k: usize, cfg: &KMeansConfig) -> Result<Clustering> {
    if dim == 0 || !points.len().is_multiple_of(dim) {
        return Err(Error::Input(format!(
            "{} values cannot be split into rows of dimension {dim}",
            points.len()
        )));
    }
    let n = points.len() / dim;
    if k == 0 || n < k {
        return Err(Error::Input(format!("need at least {k} rows for k-means, got {n}")));
    }
    let mut best: Option<Clustering> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let init = seed_centroids(points, dim, k, &mut rng);
        let run = lloyd(points, dim, k, init, cfg.max_iters);
        if best.as_ref().is_none_or(|b| run.cohesion > b.cohesion) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separates_antipodal_clouds() {
        let mut points = Vec::new();
        for i in 0..20 {
            let t = 0.01 * i as f64;
            let (s, c) = t.sin_cos();
            points.extend_from_slice(&[c, s, 0.0]);
            points.extend_from_slice(&[-c, 0.0, s]);
        }
        let out = spherical_kmeans(&points, 3, 2, &KMeansConfig::default()).unwrap();
        for pair in out.assignments.chunks_exact(2) {
            assert_ne!(pair[0], pair[1]);
        }
        for c in out.centroids.chunks_exact(3) {
            assert!((dot(c, c) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_rows() {
        assert!(spherical_kmeans(&[1.0, 0.0], 2, 2, &KMeansConfig::default()).is_err());
    }

    #[test]
    fn duplicate_points_do_not_leave_empty_clusters() {
        let points = [1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0];
        let out = spherical_kmeans(&points, 2, 2, &KMeansConfig::default()).unwrap();
        assert_ne!(out.assignments[0], out.assignments[3]);
    }
}
