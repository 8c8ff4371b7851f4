//! The eight-point two-dimensional sample used throughout the tests and docs.

use crate::dataset::Dataset;

pub const SAMPLE_POINTS: [[f64; 2]; 8] = [
    [1.0, 1.0],
    [1.5, 1.8],
    [5.0, 8.0],
    [8.0, 8.0],
    [10.0, 0.6],
    [9.0, 11.0],
    [0.0, 1.0],
    [3.0, 4.0],
];

pub fn sample_dataset() -> Dataset {
    Dataset::from_rows(&SAMPLE_POINTS).expect("sample points are finite")
}
