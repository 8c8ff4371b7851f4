use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::init::kmeanspp_indices;
use super::{check_k, cluster_means, derive_seed, squared_distance_unchecked, Clustering, RunConfig};
use crate::dataset::Dataset;
use crate::error::Result;

/// A single Lloyd run together with the SSE recorded after every
/// assign/update pair.
#[derive(Debug, Clone, PartialEq)]
pub struct LloydRun {
    pub clustering: Clustering,
    pub sse_history: Vec<f64>,
}

/// Best of `config.restarts` Lloyd runs. Lowest SSE wins, ties go to the
/// earlier restart.
pub fn lloyd_fit(dataset: &Dataset, k: usize, config: &RunConfig) -> Result<Clustering> {
    config.validate()?;
    check_k(dataset, k)?;
    let mut best: Option<Clustering> = None;
    for r in 0..config.restarts {
        let run = run_unchecked(dataset, k, config, r);
        if best.as_ref().is_none_or(|b| run.clustering.sse < b.sse) {
            best = Some(run.clustering);
        }
    }
    Ok(best.expect("restarts >= 1"))
}

/// Restart number `restart` of [`lloyd_fit`], with its SSE trace.
pub fn lloyd_run(
    dataset: &Dataset,
    k: usize,
    config: &RunConfig,
    restart: usize,
) -> Result<LloydRun> {
    config.validate()?;
    check_k(dataset, k)?;
    Ok(run_unchecked(dataset, k, config, restart))
}

fn run_unchecked(dataset: &Dataset, k: usize, config: &RunConfig, restart: usize) -> LloydRun {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, k, restart));
    let mut centroids: Vec<Vec<f64>> = kmeanspp_indices(dataset, k, &mut rng)
        .into_iter()
        .map(|i| dataset.point(i).to_vec())
        .collect();

    let mut assignment = assign(dataset, &centroids);
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut converged = false;

    loop {
        let updated = update(dataset, &mut assignment, k);
        let shift = centroids
            .iter()
            .zip(&updated)
            .map(|(a, b)| squared_distance_unchecked(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = updated;
        iterations += 1;
        history.push(sse_of(dataset, &assignment, &centroids));

        if config.tol > 0.0 && shift < config.tol {
            converged = true;
            break;
        }
        let next = assign(dataset, &centroids);
        if next == assignment {
            converged = true;
            break;
        }
        if iterations >= config.max_iter {
            break;
        }
        assignment = next;
    }

    let sse = *history.last().expect("at least one iteration");
    LloydRun {
        clustering: Clustering {
            k,
            assignment,
            centroids,
            sse,
            iterations,
            converged,
        },
        sse_history: history,
    }
}

/// Nearest centroid for every point; ties go to the lowest index.
fn assign(dataset: &Dataset, centroids: &[Vec<f64>]) -> Vec<usize> {
    dataset
        .points()
        .map(|pt| {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (j, c) in centroids.iter().enumerate() {
                let d = squared_distance_unchecked(pt, c);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
            best
        })
        .collect()
}

/// Recomputes centroids as cluster means. An empty cluster takes the point
/// of the largest cluster that lies farthest from that cluster's mean.
fn update(dataset: &Dataset, assignment: &mut [usize], k: usize) -> Vec<Vec<f64>> {
    loop {
        let means = cluster_means(dataset, assignment, k);
        let Some(empty) = means.iter().position(Option::is_none) else {
            return means.into_iter().map(Option::unwrap).collect();
        };

        let mut counts = vec![0usize; k];
        for &j in assignment.iter() {
            counts[j] += 1;
        }
        let donor = (0..k)
            .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
            .expect("k >= 1");
        let donor_mean = means[donor].as_ref().expect("largest cluster is non-empty");
        let mut far = None;
        let mut far_d = -1.0;
        for (i, pt) in dataset.points().enumerate() {
            if assignment[i] == donor {
                let d = squared_distance_unchecked(pt, donor_mean);
                if d > far_d {
                    far_d = d;
                    far = Some(i);
                }
            }
        }
        assignment[far.expect("donor has points")] = empty;
    }
}

fn sse_of(dataset: &Dataset, assignment: &[usize], centroids: &[Vec<f64>]) -> f64 {
    dataset
        .points()
        .zip(assignment)
        .map(|(pt, &j)| squared_distance_unchecked(pt, &centroids[j]))
        .sum()
}
