//! Global SSE optimum by enumerating set partitions.
//!
//! Partitions are walked as restricted growth strings (point `i` joins one
//! of the clusters already opened or opens the next one). Adding a point to
//! a cluster never lowers that cluster's SSE, so the running cost is a lower
//! bound and branches at or above the best complete partition are cut.

use super::{cluster_means, squared_distance_unchecked};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Largest dataset the oracle accepts. Bell(12) = 4 213 597 partitions.
pub const ORACLE_MAX_POINTS: usize = 12;

/// Minimum SSE over all partitions of the dataset into `k` non-empty
/// clusters, with each centroid at its cluster mean.
pub fn exhaustive_optimal_sse(dataset: &Dataset, k: usize) -> Result<f64> {
    let n = dataset.len();
    if n > ORACLE_MAX_POINTS {
        return Err(Error::Capacity(format!(
            "exhaustive search supports at most {ORACLE_MAX_POINTS} points, got {n}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::Config(format!(
            "k = {k} must lie in 1..={n} for exhaustive search"
        )));
    }

    let mut search = Search {
        dataset,
        k,
        labels: vec![0; n],
        counts: vec![0; k],
        means: vec![vec![0.0; dataset.dim()]; k],
        best_cost: f64::INFINITY,
        best_labels: Vec::new(),
    };
    search.descend(0, 0, 0.0);

    let means: Vec<Vec<f64>> = cluster_means(dataset, &search.best_labels, k)
        .into_iter()
        .map(|m| m.expect("complete partitions have no empty cluster"))
        .collect();
    Ok(dataset
        .points()
        .zip(&search.best_labels)
        .map(|(pt, &j)| squared_distance_unchecked(pt, &means[j]))
        .sum())
}

struct Search<'a> {
    dataset: &'a Dataset,
    k: usize,
    labels: Vec<usize>,
    counts: Vec<usize>,
    means: Vec<Vec<f64>>,
    best_cost: f64,
    best_labels: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, i: usize, opened: usize, cost: f64) {
        let n = self.dataset.len();
        if cost > self.best_cost {
            return;
        }
        if i == n {
            if opened == self.k && cost < self.best_cost {
                self.best_cost = cost;
                self.best_labels.clone_from(&self.labels);
            }
            return;
        }
        // every cluster still unopened needs at least one of the remaining points
        if self.k - opened > n - i {
            return;
        }
        let limit = if opened < self.k { opened + 1 } else { self.k };
        for j in 0..limit {
            let pt = self.dataset.point(i);
            let c = self.counts[j] as f64;
            let added = if self.counts[j] == 0 {
                0.0
            } else {
                c / (c + 1.0) * squared_distance_unchecked(pt, &self.means[j])
            };
            let saved = self.means[j].clone();
            for (m, x) in self.means[j].iter_mut().zip(pt) {
                *m += (x - *m) / (c + 1.0);
            }
            self.counts[j] += 1;
            self.labels[i] = j;

            self.descend(i + 1, opened.max(j + 1), cost + added);

            self.counts[j] -= 1;
            self.means[j] = saved;
        }
    }
}
