//! Euclidean k-means.
//!
//! Lloyd iteration from k-means++ seeds, best of several restarts, plus an
//! exhaustive-partition solver that gives the global optimum for tiny inputs.

mod init;
mod lloyd;
mod oracle;
mod seed;

pub use init::kmeanspp_init;
pub use lloyd::{lloyd_fit, lloyd_run, LloydRun};
pub use oracle::{exhaustive_optimal_sse, ORACLE_MAX_POINTS};
pub use seed::{derive_seed, splitmix64};

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Stopping and restart parameters for [`lloyd_fit`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Stop early once no centroid moves by more than this (Euclidean). `0` disables.
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_iter: 300,
            restarts: 10,
            seed: 0,
            tol: 0.0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(Error::Config("tol must be a finite non-negative number".into()));
        }
        Ok(())
    }
}

/// Result of clustering one dataset into `k` groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clustering {
    pub k: usize,
    pub assignment: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub sse: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Sum of squared coordinate differences.
pub fn squared_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Usage(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(squared_distance_unchecked(a, b))
}

#[inline]
pub(crate) fn squared_distance_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

/// Within-cluster sum of squared distances of every point to its assigned centroid.
pub fn sse(dataset: &Dataset, assignment: &[usize], centroids: &[Vec<f64>]) -> Result<f64> {
    if assignment.len() != dataset.len() {
        return Err(Error::Usage(format!(
            "assignment has length {}, dataset has {} points",
            assignment.len(),
            dataset.len()
        )));
    }
    if let Some(c) = centroids.iter().find(|c| c.len() != dataset.dim()) {
        return Err(Error::Usage(format!(
            "centroid has dimension {}, dataset has {}",
            c.len(),
            dataset.dim()
        )));
    }
    let mut total = 0.0;
    for (pt, &j) in dataset.points().zip(assignment) {
        let c = centroids.get(j).ok_or_else(|| {
            Error::Usage(format!(
                "cluster index {j} out of range for {} centroids",
                centroids.len()
            ))
        })?;
        total += squared_distance_unchecked(pt, c);
    }
    Ok(total)
}

/// Coordinate-wise means of each cluster. Empty clusters yield `None`.
pub(crate) fn cluster_means(
    dataset: &Dataset,
    assignment: &[usize],
    k: usize,
) -> Vec<Option<Vec<f64>>> {
    let p = dataset.dim();
    let mut sums = vec![vec![0.0; p]; k];
    let mut counts = vec![0usize; k];
    for (pt, &j) in dataset.points().zip(assignment) {
        counts[j] += 1;
        for (s, v) in sums[j].iter_mut().zip(pt) {
            *s += v;
        }
    }
    sums.into_iter()
        .zip(counts)
        .map(|(mut s, c)| {
            (c > 0).then(|| {
                let c = c as f64;
                s.iter_mut().for_each(|v| *v /= c);
                s
            })
        })
        .collect()
}

/// Checks `1 <= k <= distinct points`.
pub(crate) fn check_k(dataset: &Dataset, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    let distinct = dataset.distinct_count();
    if k > distinct {
        return Err(Error::Config(format!(
            "k = {k} exceeds the {distinct} distinct points in the dataset"
        )));
    }
    Ok(())
}
