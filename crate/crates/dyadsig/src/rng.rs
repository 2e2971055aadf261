//! Deterministic RNG streams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator seeded
//! through this module. Mixing the user seed with a stream tag and a unit
//! index gives each replica, fold, or subject an independent stream while
//! keeping byte-identical reruns for a fixed seed, independent of thread
//! scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const STREAM_BOOTSTRAP: u64 = 1;
pub(crate) const STREAM_FOLDS: u64 = 2;
pub(crate) const STREAM_SVM: u64 = 3;
pub(crate) const STREAM_ABILITY: u64 = 16;
pub(crate) const STREAM_SPEECH: u64 = 17;
pub(crate) const STREAM_MOVEMENT: u64 = 18;
pub(crate) const STREAM_SCORES: u64 = 19;
pub(crate) const STREAM_DEMOGRAPHICS: u64 = 20;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes `(seed, stream, index)` into one 64-bit seed with avalanche
/// steps so nearby tuples give unrelated streams.
pub(crate) fn stream_seed(seed: u64, stream: u64, index: u64) -> u64 {
    let mut s = splitmix64(seed ^ 0x6A09_E667_F3BC_C909);
    s = splitmix64(s ^ stream);
    splitmix64(s ^ index)
}

/// Seeds a generator from `(seed, stream, index)`.
pub(crate) fn stream_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(seed, stream, index))
}
