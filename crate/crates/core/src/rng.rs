//! Deterministic random source shared by generators, tests and the CLI.
//!
//! All randomness flows from ChaCha8 seeded with an explicit 64-bit seed.
//! Independent trials of one experiment use separate ChaCha streams of the
//! same seed, so trial `k` is reproducible without replaying trials `0..k`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type WorkbenchRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> WorkbenchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The generator for trial `trial` of an experiment seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> WorkbenchRng {
    let mut rng = seeded(seed);
    rng.set_stream(trial);
    rng
}
