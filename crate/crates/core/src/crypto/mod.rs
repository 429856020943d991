//! Classical building blocks and encryption schemes.

pub mod arith;
pub mod owtp;
pub mod pkes;
pub mod prf;
pub mod prng;
pub mod prp;
pub mod separations;
pub mod skes;

use serde::{Deserialize, Serialize};

use crate::rng::mix;
use crate::BitString;

pub use owtp::{owtp_eval, owtp_gen, owtp_invert, RsaIndex, RsaTrapdoor, TrapdoorKeyPair};
pub use pkes::{pkes_owtp_dec, pkes_owtp_enc, PkCiphertext, PkesOwtp, PublicKey};
pub use prf::{feistel_prp, feistel_prp_inv, prf_eval, Feistel, Prf, PrfBackend};
pub use prng::{blum_micali_next, goldreich_levin_prng, goldreich_levin_stream, OwpHandle, OwpKind, PrngState};
pub use prp::sample_ideal_qprp;
pub use separations::{cca2_restricted_dec, Cca1Sep};
pub use skes::{Ciphertext, Goldreich, KeyedSkes, Otp, PrpMode, PrpScheme, Skes};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SecretKey {
    bits: BitString,
}

impl SecretKey {
    pub fn new(bits: BitString) -> Self {
        Self { bits }
    }

    pub fn random<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self::new(BitString::random(len, rng))
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 64-bit digest used to seed keyed primitives.
    pub(crate) fn word(&self) -> u64 {
        let mut words = vec![self.bits.len() as u64];
        words.extend(
            self.bits
                .bits()
                .chunks(64)
                .map(|c| c.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)),
        );
        mix(&words)
    }
}

impl std::fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SecretKey({})", self.bits)
    }
}
