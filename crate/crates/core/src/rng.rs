//! Pinned per-trial random streams.
//!
//! Every Monte Carlo trial draws from its own generator, keyed only by the
//! run seed and the trial index:
//!
//! ```text
//! key    = mix64(mix64(seed) ^ trial)
//! stream = Xoshiro256PlusPlus::seed_from_u64(key)
//! ```
//!
//! `mix64` is the SplitMix64 output finalizer, a bijection on `u64`, so for a
//! fixed seed distinct trials always get distinct keys. `seed_from_u64`
//! expands the key into the 256-bit xoshiro state with SplitMix64 (as
//! implemented by `rand_xoshiro` 0.6). Since a trial never sees another
//! trial's stream, tallies can be reduced in any order and the result does
//! not depend on the number of worker threads.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type TrialRng = Xoshiro256PlusPlus;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for trial `trial` of a run seeded with `seed`.
#[inline]
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    Xoshiro256PlusPlus::seed_from_u64(mix64(mix64(seed) ^ trial))
}
