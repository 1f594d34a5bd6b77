//! Deterministic random streams.
//!
//! Every experiment draws from ChaCha8 keyed by the master seed, with one
//! independent 64-bit stream per work item (trial, cell, ...). Stream `i` of
//! seed `s` is `ChaCha8Rng::seed_from_u64(s)` with `set_stream(i)`, so results
//! do not depend on scheduling or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Returns the generator for stream `index` under `master_seed`.
pub fn stream(master_seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Packs a (cell, trial) pair into a stream index.
pub fn cell_stream(master_seed: u64, cell: u32, trial: u32) -> StreamRng {
    stream(master_seed, ((cell as u64) << 32) | trial as u64)
}
