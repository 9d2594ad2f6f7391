//! Seeded k-means clustering: k-means++ initialization and Lloyd
//! iterations with deterministic tie-breaking.

use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AnalysisError;
use crate::matrix::{squared_distance, Matrix};

pub const DEFAULT_KMEANS_MAX_ITERS: usize = 300;
pub const DEFAULT_KMEANS_TOL: f64 = 1e-9;

/// Clustering of n points into k clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    /// Cluster id per input row, each in `0..k`.
    pub assignments: Vec<usize>,
    /// k x D centroid matrix.
    pub centroids: Matrix,
    /// Sum of squared distances from each point to its assigned centroid.
    pub inertia: f64,
    /// Lloyd iterations run.
    pub iterations: usize,
}

/// Lloyd's algorithm with k-means++ initialization.
///
/// Runs until the largest squared centroid shift is at most `tol` or
/// `max_iters` is reached, then re-assigns once against the final centroids
/// so every point ends on a nearest centroid. A point keeps its current
/// cluster on exact distance ties (this is what lets repaired clusters
/// survive coincident points), otherwise the lowest strictly-closer id
/// wins; all randomness comes from `seed`. Clusters that lose all points
/// are re-seeded with the point farthest from its assigned centroid.
pub fn kmeans(
    points: &Matrix,
    k: usize,
    seed: u64,
    max_iters: usize,
    tol: f64,
) -> Result<ClusterResult, AnalysisError> {
    let (n, d) = points.shape();
    if k == 0 || k > n {
        return Err(AnalysisError::InvalidClusterCount { k, n });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = plus_plus_init(points, k, &mut rng);
    let mut assignments = vec![0usize; n];
    let mut previous_inertia = f64::INFINITY;
    let mut iterations = 0;

    for _ in 0..max_iters {
        iterations += 1;
        let inertia = assign(points, &centroids, &mut assignments);
        assert_monotone(inertia, previous_inertia);
        previous_inertia = inertia;

        let (mut updated, mut counts) = centroid_means(points, &assignments, k, d, &centroids);
        repair_empty_clusters(points, &mut updated, &mut assignments, &mut counts);

        let mut max_shift = 0.0_f64;
        for c in 0..k {
            max_shift = max_shift.max(squared_distance(centroids.row(c), updated.row(c)));
        }
        centroids = updated;
        if max_shift <= tol {
            break;
        }
    }

    let inertia = assign(points, &centroids, &mut assignments);
    assert_monotone(inertia, previous_inertia);

    Ok(ClusterResult {
        assignments,
        centroids,
        inertia,
        iterations,
    })
}

fn assert_monotone(inertia: f64, previous: f64) {
    assert!(
        inertia <= previous * (1.0 + 1e-12) + 1e-12,
        "k-means inertia increased between Lloyd iterations: {previous} -> {inertia}"
    );
}

/// k-means++: first centroid uniform, then each next centroid drawn with
/// probability proportional to the squared distance to the nearest chosen
/// centroid.
fn plus_plus_init(points: &Matrix, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let (n, d) = points.shape();
    let mut centroids = Matrix::zeros(k, d);
    let first = rng.random_range(0..n);
    centroids.row_mut(0).copy_from_slice(points.row(first));

    let mut nearest_sq: Vec<f64> = (0..n)
        .map(|i| squared_distance(points.row(i), centroids.row(0)))
        .collect();

    for c in 1..k {
        let total: f64 = nearest_sq.iter().sum();
        let chosen = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (i, weight) in nearest_sq.iter().enumerate() {
                target -= weight;
                if target < 0.0 {
                    chosen = i;
                    break;
                }
            }
            chosen
        } else {
            // All points coincide with chosen centroids; any pick works.
            rng.random_range(0..n)
        };
        centroids.row_mut(c).copy_from_slice(points.row(chosen));
        for (i, nearest) in nearest_sq.iter_mut().enumerate() {
            let dist = squared_distance(points.row(i), centroids.row(c));
            if dist < *nearest {
                *nearest = dist;
            }
        }
    }
    centroids
}

/// Moves each point to a strictly nearer centroid if one exists (lowest id
/// among the strictly nearer) and returns the resulting inertia.
fn assign(points: &Matrix, centroids: &Matrix, assignments: &mut [usize]) -> f64 {
    let mut inertia = 0.0;
    for (i, point) in points.iter_rows().enumerate() {
        let mut best = assignments[i];
        let mut best_dist = squared_distance(point, centroids.row(best));
        for c in 0..centroids.rows() {
            let dist = squared_distance(point, centroids.row(c));
            if dist < best_dist {
                best = c;
                best_dist = dist;
            }
        }
        assignments[i] = best;
        inertia += best_dist;
    }
    inertia
}

/// Mean of each cluster's points; empty clusters keep their old centroid
/// until repaired.
fn centroid_means(
    points: &Matrix,
    assignments: &[usize],
    k: usize,
    d: usize,
    previous: &Matrix,
) -> (Matrix, Vec<usize>) {
    let mut sums = Matrix::zeros(k, d);
    let mut counts = vec![0usize; k];
    for (i, point) in points.iter_rows().enumerate() {
        let c = assignments[i];
        counts[c] += 1;
        let sum = sums.row_mut(c);
        for (acc, value) in sum.iter_mut().zip(point) {
            *acc += value;
        }
    }
    for (c, &count) in counts.iter().enumerate() {
        if count == 0 {
            sums.row_mut(c).copy_from_slice(previous.row(c));
        } else {
            let inv = 1.0 / count as f64;
            for value in sums.row_mut(c) {
                *value *= inv;
            }
        }
    }
    (sums, counts)
}

/// Re-seeds each empty cluster with the point currently farthest from its
/// assigned centroid. The stolen point becomes a singleton, which can only
/// lower the inertia, so the monotonicity assertion stays valid.
fn repair_empty_clusters(
    points: &Matrix,
    centroids: &mut Matrix,
    assignments: &mut [usize],
    counts: &mut [usize],
) {
    let k = counts.len();
    let mut stolen = vec![false; points.rows()];
    for empty in 0..k {
        if counts[empty] != 0 {
            continue;
        }
        let mut candidate: Option<(usize, f64)> = None;
        for (i, point) in points.iter_rows().enumerate() {
            if stolen[i] || counts[assignments[i]] <= 1 {
                continue;
            }
            let dist = squared_distance(point, centroids.row(assignments[i]));
            if candidate.is_none_or(|(_, best)| dist > best) {
                candidate = Some((i, dist));
            }
        }
        // k <= n guarantees a donor cluster with at least two points exists.
        let (point_index, _) = candidate.expect("no donor point for empty cluster");
        centroids
            .row_mut(empty)
            .copy_from_slice(points.row(point_index));
        counts[assignments[point_index]] -= 1;
        assignments[point_index] = empty;
        counts[empty] = 1;
        stolen[point_index] = true;
    }
}
