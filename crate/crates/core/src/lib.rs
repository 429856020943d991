//! Security games, constructions and attacks for classical and quantum
//! encryption and oblivious RAM, at sizes small enough to simulate exactly.
//!
//! The crate is organised bottom-up:
//!
//! * [`crypto`]: PRNGs, PRFs, permutations, trapdoor permutations and the
//!   classical encryption schemes, including the deliberately broken ones used
//!   as separation counterexamples.
//! * [`oram`]: PathORAM client and server with recorded access patterns.
//! * [`qoram`]: quantum encryption schemes and PathQORAM over simulated blocks.
//! * [`games`]: indistinguishability and unforgeability experiments.
//! * [`attacks`]: concrete adversaries for those experiments.
//! * [`fiat_shamir`]: Schnorr, the Fiat-Shamir transform and random oracles.
//!
//! All randomness is drawn from seeded ChaCha streams (see [`rng`]), so every
//! experiment is reproducible bit for bit from its seed.

#![forbid(unsafe_code)]

pub mod attacks;
pub mod bits;
pub mod crypto;
pub mod fiat_shamir;
pub mod games;
pub mod oram;
pub mod qoram;
pub mod rng;

mod error;

pub use bits::BitString;
pub use error::{Error, Result};
