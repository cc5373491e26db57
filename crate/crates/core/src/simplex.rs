//! Simplex label alphabets, rounding of vector labels, and fitting a regular
//! simplex to a cloud of unit vectors.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::kmeans::{spherical_kmeans, KMeansConfig};
use crate::sdp::VectorLabeling;

const BASIS_TOL: f64 = 1e-9;

/// `r` unit vectors in dimension `dim` with pairwise inner product `-1/(r-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexBasis {
    r: usize,
    dim: usize,
    vectors: Vec<f64>,
}

impl SimplexBasis {
    /// Wraps `r x dim` row-major vectors, checking the simplex inner-product table.
    pub fn from_vectors(r: usize, dim: usize, vectors: Vec<f64>) -> Result<Self> {
        if vectors.len() != r * dim {
            return Err(Error::dim(r * dim, vectors.len()));
        }
        let basis = SimplexBasis { r, dim, vectors };
        let off = basis.off_diagonal();
        for a in 0..r {
            for b in a..r {
                let target = if a == b { 1.0 } else { off };
                let got = dot(basis.vector(a), basis.vector(b));
                if (got - target).abs() > BASIS_TOL {
                    return Err(Error::Input(format!(
                        "vectors {a} and {b} have inner product {got}, expected {target}"
                    )));
                }
            }
        }
        Ok(basis)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, label: usize) -> &[f64] {
        &self.vectors[label * self.dim..(label + 1) * self.dim]
    }

    /// Row-major `r x dim` storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.vectors
    }

    /// `-1/(r-1)`.
    pub fn off_diagonal(&self) -> f64 {
        -1.0 / (self.r as f64 - 1.0)
    }

    /// Inner products of `x` with every vertex.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        self.vectors.chunks_exact(self.dim).map(|v| dot(v, x)).collect()
    }

    /// Vertex with the largest inner product; ties go to the lowest label.
    pub fn nearest(&self, x: &[f64]) -> usize {
        let mut best = (0, f64::NEG_INFINITY);
        for (label, s) in self.project(x).into_iter().enumerate() {
            if s > best.1 {
                best = (label, s);
            }
        }
        best.0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A hard labeling of every node, with the supervised nodes marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteLabeling {
    assignments: Vec<usize>,
    labeled: Vec<bool>,
    r: usize,
}

impl DiscreteLabeling {
    pub fn new(assignments: Vec<usize>, labeled: Vec<bool>, r: usize) -> Result<Self> {
        if labeled.len() != assignments.len() {
            return Err(Error::dim(assignments.len(), labeled.len()));
        }
        if let Some(&label) = assignments.iter().find(|&&l| l >= r) {
            return Err(Error::LabelRange { label, r });
        }
        Ok(DiscreteLabeling {
            assignments,
            labeled,
            r,
        })
    }

    /// Labeling with no supervised nodes.
    pub fn unsupervised(assignments: Vec<usize>, r: usize) -> Result<Self> {
        let n = assignments.len();
        Self::new(assignments, vec![false; n], r)
    }

    pub fn n(&self) -> usize {
        self.assignments.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    pub fn label(&self, node: usize) -> usize {
        self.assignments[node]
    }

    pub fn is_labeled(&self, node: usize) -> bool {
        self.labeled[node]
    }

    pub fn labeled_mask(&self) -> &[bool] {
        &self.labeled
    }

    /// Supervised `(node, label)` pairs in node order.
    pub fn labeled_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .filter(|&i| self.labeled[i])
            .map(|i| (i, self.assignments[i]))
            .collect()
    }
}

/// Regular simplex in the first `r - 1` coordinates, zero-padded to `dim`.
///
/// Vertex `k` is the Helmert-coordinate image of `e_k - 1/r`, scaled to unit length.
pub fn canonical_simplex(r: usize, dim: usize) -> Result<SimplexBasis> {
    if r < 2 {
        return Err(Error::Parameter(format!("r must be at least 2, got {r}")));
    }
    if dim < r - 1 {
        return Err(Error::dim(r - 1, dim));
    }
    let scale = ((r as f64 - 1.0) / r as f64).sqrt();
    let mut vectors = vec![0.0; r * dim];
    for j in 1..r {
        let norm = ((j * (j + 1)) as f64).sqrt();
        for k in 0..r {
            let h = match k.cmp(&j) {
                std::cmp::Ordering::Less => 1.0 / norm,
                std::cmp::Ordering::Equal => -(j as f64) / norm,
                std::cmp::Ordering::Greater => 0.0,
            };
            vectors[k * dim + (j - 1)] = h / scale;
        }
    }
    for v in vectors.chunks_exact_mut(dim) {
        let norm = dot(v, v).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Ok(SimplexBasis { r, dim, vectors })
}

/// Snaps every unpinned row to its nearest vertex. Pinned rows keep their labels.
pub fn round_labeling(x: &VectorLabeling, basis: &SimplexBasis) -> Result<DiscreteLabeling> {
    if x.dim() != basis.dim() {
        return Err(Error::dim(basis.dim(), x.dim()));
    }
    let (assignments, labeled) = (0..x.n())
        .map(|i| match x.pinned(i) {
            Some(label) => (label, true),
            None => (basis.nearest(x.row(i)), false),
        })
        .unzip();
    DiscreteLabeling::new(assignments, labeled, basis.r())
}

/// Fits a regular simplex to the rows of `x`: spherical k-means gives `r`
/// centroids, then the canonical simplex is rotated onto them.
///
/// Vertex `c` of the result is the one aligned with k-means centroid `c`.
pub fn best_fit_simplex(x: &VectorLabeling, r: usize, seed: u64) -> Result<SimplexBasis> {
    if x.n() < r {
        return Err(Error::Input(format!(
            "best-fit simplex needs at least {r} rows, got {}",
            x.n()
        )));
    }
    let cfg = KMeansConfig {
        seed,
        ..KMeansConfig::default()
    };
    let clustering = spherical_kmeans(x.as_slice(), x.dim(), r, &cfg)?;
    align_simplex(&clustering.centroids, r, x.dim())
}

/// Rotation of the canonical simplex maximizing `sum_c <vertex_c, targets_c>`.
///
/// With `K = T^T S0` (targets `T`, canonical `S0`) and `K = U S W^T`, the
/// optimal orthogonal map is `R = W U^T` and the aligned simplex is `S0 R`.
pub fn align_simplex(targets: &[f64], r: usize, dim: usize) -> Result<SimplexBasis> {
    if targets.len() != r * dim {
        return Err(Error::dim(r * dim, targets.len()));
    }
    let canonical = canonical_simplex(r, dim)?;
    let s0 = DMatrix::from_row_slice(r, dim, canonical.as_slice());
    let t = DMatrix::from_row_slice(r, dim, targets);
    let k = t.transpose() * &s0;
    let svd = k.svd(true, true);
    let (u, w_t) = (
        svd.u.expect("requested U"),
        svd.v_t.expect("requested V^T"),
    );
    let rotation = w_t.transpose() * u.transpose();
    let aligned = s0 * rotation;
    let mut vectors = Vec::with_capacity(r * dim);
    for row in aligned.row_iter() {
        vectors.extend(row.iter().copied());
    }
    // Rows of an orthogonally rotated simplex are unit up to rounding; restore exactly.
    for v in vectors.chunks_exact_mut(dim) {
        let norm = dot(v, v).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    SimplexBasis::from_vectors(r, dim, vectors)
}

/// `sum_c <basis_c, targets_c>`.
pub fn alignment_score(basis: &SimplexBasis, targets: &[f64]) -> f64 {
    basis
        .as_slice()
        .chunks_exact(basis.dim())
        .zip(targets.chunks_exact(basis.dim()))
        .map(|(a, b)| dot(a, b))
        .sum()
}

/// Reorders the vertices of `fitted` so that every label in `seen` sits on the
/// fitted vertex closest to `reference`'s vertex for that label (jointly
/// optimal assignment). Unseen labels take the leftover vertices in order.
pub fn align_to_labels(fitted: &SimplexBasis, reference: &SimplexBasis, seen: &[usize]) -> Result<SimplexBasis> {
    let r = fitted.r();
    if reference.r() != r {
        return Err(Error::dim(r, reference.r()));
    }
    if reference.dim() != fitted.dim() {
        return Err(Error::dim(fitted.dim(), reference.dim()));
    }
    if let Some(&label) = seen.iter().find(|&&l| l >= r) {
        return Err(Error::LabelRange { label, r });
    }
    let affinity: Vec<Vec<f64>> = seen
        .iter()
        .map(|&label| {
            (0..r)
                .map(|v| dot(fitted.vector(v), reference.vector(label)))
                .collect()
        })
        .collect();

    let mut best = (f64::NEG_INFINITY, Vec::new());
    let mut used = vec![false; r];
    let mut current = Vec::with_capacity(seen.len());
    assign(&affinity, &mut used, &mut current, 0.0, &mut best);

    let mut order = vec![usize::MAX; r];
    for (slot, &label) in seen.iter().enumerate() {
        order[label] = best.1[slot];
    }
    let taken: Vec<usize> = best.1.clone();
    let mut leftovers = (0..r).filter(|v| !taken.contains(v));
    for slot in order.iter_mut().filter(|o| **o == usize::MAX) {
        *slot = leftovers.next().expect("enough vertices");
    }
    let mut vectors = Vec::with_capacity(r * fitted.dim());
    for &v in &order {
        vectors.extend_from_slice(fitted.vector(v));
    }
    Ok(SimplexBasis {
        r,
        dim: fitted.dim(),
        vectors,
    })
}

fn assign(
    affinity: &[Vec<f64>],
    used: &mut [bool],
    current: &mut Vec<usize>,
    score: f64,
    best: &mut (f64, Vec<usize>),
) {
    let depth = current.len();
    if depth == affinity.len() {
        if score > best.0 {
            *best = (score, current.clone());
        }
        return;
    }
    for v in 0..used.len() {
        if !used[v] {
            used[v] = true;
            current.push(v);
            assign(affinity, used, current, score + affinity[depth][v], best);
            current.pop();
            used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_table(basis: &SimplexBasis, tol: f64) {
        let r = basis.r();
        for a in 0..r {
            for b in 0..r {
                let target = if a == b { 1.0 } else { -1.0 / (r as f64 - 1.0) };
                assert!((dot(basis.vector(a), basis.vector(b)) - target).abs() < tol);
            }
        }
    }

    #[test]
    fn two_labels_are_antipodal() {
        let basis = canonical_simplex(2, 1).unwrap();
        assert_eq!(basis.as_slice(), &[1.0, -1.0]);
    }

    #[test]
    fn canonical_inner_products() {
        for r in 2..=8 {
            check_table(&canonical_simplex(r, r + 2).unwrap(), 1e-12);
        }
    }

    #[test]
    fn canonical_rejects_small_dimension() {
        assert!(matches!(canonical_simplex(4, 2), Err(Error::Dimension { .. })));
    }

    #[test]
    fn round_exact_vertex_and_tie() {
        let basis = canonical_simplex(3, 3).unwrap();
        let x = VectorLabeling::new(basis.vector(2).to_vec(), 3, vec![None]).unwrap();
        assert_eq!(round_labeling(&x, &basis).unwrap().assignments(), &[2]);

        let basis = canonical_simplex(2, 2).unwrap();
        let x = VectorLabeling::new(vec![0.0, 1.0], 2, vec![None]).unwrap();
        assert_eq!(round_labeling(&x, &basis).unwrap().assignments(), &[0]);
    }

    #[test]
    fn round_keeps_pinned_labels() {
        let basis = canonical_simplex(2, 2).unwrap();
        let x = VectorLabeling::new(vec![-1.0, 0.0, 1.0, 0.0], 2, vec![Some(1), None]).unwrap();
        let rounded = round_labeling(&x, &basis).unwrap();
        assert_eq!(rounded.assignments(), &[1, 0]);
        assert!(rounded.is_labeled(0) && !rounded.is_labeled(1));
    }

    #[test]
    fn round_dimension_mismatch() {
        let basis = canonical_simplex(2, 3).unwrap();
        let x = VectorLabeling::new(vec![1.0, 0.0], 2, vec![None]).unwrap();
        assert!(matches!(round_labeling(&x, &basis), Err(Error::Dimension { .. })));
    }

    #[test]
    fn best_fit_needs_enough_rows() {
        let x = VectorLabeling::new(vec![1.0, 0.0], 2, vec![None]).unwrap();
        assert!(matches!(best_fit_simplex(&x, 2, 0), Err(Error::Input(_))));
    }

    #[test]
    fn antipodal_clouds_give_antipodal_fit() {
        let u = [0.6, 0.0, 0.8];
        let mut rows = Vec::new();
        for i in 0..10 {
            let e = 0.01 * (i as f64 - 4.5);
            rows.extend_from_slice(&[u[0] + e, e, u[2] - e]);
            rows.extend_from_slice(&[-u[0] - e, e, -u[2]]);
        }
        let x = VectorLabeling::from_rows_normalized(rows, 3).unwrap();
        let fit = best_fit_simplex(&x, 2, 1).unwrap();
        check_table(&fit, 1e-9);
        let best = dot(fit.vector(0), &u).abs().max(dot(fit.vector(1), &u).abs());
        assert!(best > 0.999, "alignment {best}");
    }

    #[test]
    fn align_to_labels_puts_seen_labels_in_place() {
        let reference = canonical_simplex(3, 3).unwrap();
        // Fitted basis is the reference with vertices cycled.
        let mut v = Vec::new();
        for k in [1, 2, 0] {
            v.extend_from_slice(reference.vector(k));
        }
        let fitted = SimplexBasis::from_vectors(3, 3, v).unwrap();
        let aligned = align_to_labels(&fitted, &reference, &[2]).unwrap();
        assert_eq!(aligned.vector(2), reference.vector(2));
        let aligned = align_to_labels(&fitted, &reference, &[0, 1, 2]).unwrap();
        assert_eq!(aligned, reference);
    }
}
