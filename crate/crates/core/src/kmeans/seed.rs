//! Per-restart seed derivation.
//!
//! Restart `r` of the run for cluster count `k` draws from its own stream,
//! seeded by `derive_seed(seed, k, r)`. Streams never depend on execution
//! order, so sweeps over `k` can run in parallel and still match a
//! sequential run bit for bit.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// One step of the SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `splitmix64(splitmix64(splitmix64(seed) ^ k) ^ r)`.
pub fn derive_seed(seed: u64, k: usize, restart: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ k as u64) ^ restart as u64)
}
