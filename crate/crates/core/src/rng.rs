//! Seeded, reproducible random streams.
//!
//! One root seed fans out into independent ChaCha streams, one per stage, so
//! that adding draws to one stage never perturbs another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream identifiers for the pipeline stages.
pub mod stage {
    pub const GENERATE: u64 = 1;
    pub const GLOBAL_V1: u64 = 2;
    pub const GLOBAL_V2: u64 = 3;
    pub const ST: u64 = 4;
    pub const SPARSIFY: u64 = 5;
    pub const LEARN: u64 = 6;
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
