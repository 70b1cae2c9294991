//! Deterministic seed derivation for parallel, reproducible sampling.
//!
//! Every stochastic component derives its stream from a user seed plus fixed
//! integer coordinates (matrix entry, pair index, fold, ...). Results are then
//! independent of evaluation order and worker count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// splitmix64 finalizer; the standard constants from Steele et al.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Mixes a seed with one stream coordinate.
pub fn mix(seed: u64, a: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ a.wrapping_mul(0xa076_1d64_78bd_642f))
}

/// Mixes a seed with two stream coordinates (e.g. a matrix entry index).
pub fn mix2(seed: u64, a: u64, b: u64) -> u64 {
    splitmix64(mix(seed, a) ^ b.wrapping_mul(0xe703_7ed1_a0b4_28db))
}

/// RNG for the stream identified by `(seed, a)`.
pub fn rng_for(seed: u64, a: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(mix(seed, a))
}

/// RNG for the stream identified by `(seed, a, b)`.
pub fn rng_for2(seed: u64, a: u64, b: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(mix2(seed, a, b))
}
