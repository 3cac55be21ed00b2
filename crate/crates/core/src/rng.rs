//! Seeded random streams.
//!
//! Every random quantity in the crate is drawn from a [`ChaCha8Rng`], a
//! counter-based generator: the 64-bit seed expands to a 256-bit key and each
//! key exposes 2^64 independent streams. Campaigns never share a generator
//! between trials; instead trial `t` of a campaign with master seed `s` gets
//! its own seed [`substream_seed(s, t)`](substream_seed), so results do not
//! depend on the order in which trials are executed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand_chacha::ChaCha8Rng as StreamRng;

/// Stream used for point positions inside a point set seed.
pub const POSITION_STREAM: u64 = 0;
/// Stream used for the Poisson point count inside a point set seed.
pub const COUNT_STREAM: u64 = 1;
/// Stream used for auxiliary choices (victim sets, planted points).
pub const AUX_STREAM: u64 = 2;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of substream `index` under `master`.
///
/// Defined as `mix64(master + mix64((index + 1) * GOLDEN))` with wrapping
/// arithmetic. Distinct indices give distinct seeds for a fixed master.
#[inline]
pub fn substream_seed(master: u64, index: u64) -> u64 {
    let salt = mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    mix64(master.wrapping_add(salt))
}

/// Generator for `stream` of the key derived from `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
