//! Seed derivation and named random streams.
//!
//! A trial seed fans out into independent ChaCha8 streams, one per role, so that
//! changing how much randomness one role consumes never shifts another role's
//! draws. In particular the challenge bit has its own stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream identifiers.
pub mod stream {
    pub const KEY: u64 = 1;
    pub const CHALLENGE_BIT: u64 = 2;
    pub const CHALLENGER: u64 = 3;
    pub const ADVERSARY: u64 = 4;
    pub const PRNG: u64 = 5;
    pub const ENCRYPTION: u64 = 6;
    pub const MEASUREMENT: u64 = 7;
    pub const ORACLE: u64 = 8;
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a list of words into one seed.
pub fn mix(words: &[u64]) -> u64 {
    words
        .iter()
        .fold(0x6a09_e667_f3bc_c908, |acc, &w| splitmix64(acc ^ splitmix64(w)))
}

/// Seed of trial `index` under a master seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix(&[seed, index])
}

/// Stream `stream` of `seed`.
pub fn rng_for(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed drawn from another generator, for handing to sub-components.
pub fn fork<R: rand::Rng + ?Sized>(rng: &mut R) -> u64 {
    rng.gen()
}
