//! Deterministic randomness.
//!
//! A single 64-bit seed drives everything. Work item `i` of a Monte-Carlo
//! loop draws from `seed.derive(i)`, a SplitMix64 mix of the parent seed and
//! the index, so a parallel loop consumes exactly the same streams as the
//! sequential one regardless of how rayon schedules it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        RngSeed(seed)
    }

    /// Child seed for work item `index`.
    pub fn derive(self, index: u64) -> RngSeed {
        let mut z = self.0 ^ splitmix64(index.wrapping_add(0x6a09_e667_f3bc_c908));
        z = splitmix64(z);
        RngSeed(z)
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
