//! Seed splitting.
//!
//! Every random stream in the crate is derived from a single 64-bit root seed.
//! A child seed is `mix(parent ^ mix(index + GOLDEN))`, where `mix` is the
//! SplitMix64 finalizer. Children are addressed by their index only, so the
//! stream handed to partition `t` of an ensemble (or to the `k`-th child of a
//! hierarchy node) does not depend on scheduling or worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The generator used throughout the crate.
pub type Rng = ChaCha8Rng;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A node in the seed tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn new(root: u64) -> Self {
        Seed(root)
    }

    /// Seed of the `index`-th child stream.
    pub fn child(self, index: u64) -> Seed {
        Seed(mix(self.0 ^ mix(index.wrapping_add(GOLDEN))))
    }

    /// Seed of a named sub-stream, e.g. `seed.domain(b"gamma_min")`.
    pub fn domain(self, tag: &[u8]) -> Seed {
        let h = tag
            .iter()
            .fold(0xCBF2_9CE4_8422_2325u64, |h, &b| {
                (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3)
            });
        Seed(mix(self.0 ^ mix(h)))
    }

    pub fn rng(self) -> Rng {
        Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}
