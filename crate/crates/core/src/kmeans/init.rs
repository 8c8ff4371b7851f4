use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_k, squared_distance_unchecked};
use crate::dataset::Dataset;
use crate::error::Result;

/// k-means++ seeding: the first centre is a uniformly chosen point, each
/// further centre is drawn with probability proportional to its squared
/// distance from the nearest centre already chosen.
///
/// Points coinciding with a chosen centre carry zero weight, so the result
/// is always `k` distinct points when `k` does not exceed the number of
/// distinct points.
pub fn kmeanspp_init(dataset: &Dataset, k: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    check_k(dataset, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(kmeanspp_indices(dataset, k, &mut rng)
        .into_iter()
        .map(|i| dataset.point(i).to_vec())
        .collect())
}

/// Caller guarantees `1 <= k <= distinct points`.
pub(crate) fn kmeanspp_indices<R: Rng>(dataset: &Dataset, k: usize, rng: &mut R) -> Vec<usize> {
    let n = dataset.len();
    let mut chosen = Vec::with_capacity(k);
    chosen.push(rng.random_range(0..n));

    let mut weights: Vec<f64> = dataset
        .points()
        .map(|pt| squared_distance_unchecked(pt, dataset.point(chosen[0])))
        .collect();

    while chosen.len() < k {
        let total: f64 = weights.iter().sum();
        let target = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut pick = None;
        for (i, &w) in weights.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            acc += w;
            pick = Some(i);
            if acc > target {
                break;
            }
        }
        // total > 0 while fewer than all distinct points are chosen
        let next = pick.expect("no point with positive weight left");
        chosen.push(next);
        let centre = dataset.point(next);
        for (w, pt) in weights.iter_mut().zip(dataset.points()) {
            let d = squared_distance_unchecked(pt, centre);
            if d < *w {
                *w = d;
            }
        }
    }
    chosen
}
