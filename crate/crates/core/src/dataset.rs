//! Dense point sets in p-dimensional real space.

use crate::error::{Error, Result};

/// `n` points of dimension `p`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    coords: Vec<f64>,
    n: usize,
    p: usize,
}

impl Dataset {
    /// Builds a dataset from rows. Every row must have the same, non-zero
    /// length and only finite coordinates.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Data("dataset has no points".into()))?;
        let p = first.as_ref().len();
        if p == 0 {
            return Err(Error::Data("points have zero dimensions".into()));
        }
        let mut coords = Vec::with_capacity(rows.len() * p);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != p {
                return Err(Error::Data(format!(
                    "point {} has {} coordinates, expected {p}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Data(format!(
                    "point {} coordinate {} is not finite",
                    i + 1,
                    j + 1
                )));
            }
            coords.extend_from_slice(row);
        }
        Ok(Self {
            coords,
            n: rows.len(),
            p,
        })
    }

    /// Builds a dataset from a flat row-major buffer.
    pub fn from_flat(coords: Vec<f64>, p: usize) -> Result<Self> {
        if p == 0 || coords.is_empty() || !coords.len().is_multiple_of(p) {
            return Err(Error::Data(format!(
                "buffer of {} values cannot hold points of dimension {p}",
                coords.len()
            )));
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("non-finite coordinate".into()));
        }
        let n = coords.len() / p;
        Ok(Self { coords, n, p })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.p..(i + 1) * self.p]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.p)
    }

    /// Number of distinct points (exact coordinate equality).
    pub fn distinct_count(&self) -> usize {
        let mut rows: Vec<&[f64]> = self.points().collect();
        rows.sort_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        rows.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| x == y));
        rows.len()
    }

    /// Coordinate-wise mean of all points.
    pub fn mean(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.p];
        for pt in self.points() {
            for (a, v) in acc.iter_mut().zip(pt) {
                *a += v;
            }
        }
        let n = self.n as f64;
        acc.iter_mut().for_each(|a| *a /= n);
        acc
    }

    /// Total squared deviation from the global mean, i.e. SSE(1).
    pub fn total_sum_of_squares(&self) -> f64 {
        let mean = self.mean();
        self.points()
            .map(|pt| crate::kmeans::squared_distance_unchecked(pt, &mean))
            .sum()
    }

    /// Returns a copy with points reordered so that new point `i` is old point `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.n, "permutation length must equal n");
        let mut coords = Vec::with_capacity(self.coords.len());
        for &i in order {
            coords.extend_from_slice(self.point(i));
        }
        Self {
            coords,
            n: self.n,
            p: self.p,
        }
    }
}
