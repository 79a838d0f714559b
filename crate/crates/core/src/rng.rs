//! Seeded randomness.
//!
//! All randomized operations draw from ChaCha8 seeded with a single `u64`, so a
//! given `(parameters, seed)` pair always reproduces the same output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}
