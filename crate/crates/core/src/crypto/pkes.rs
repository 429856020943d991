//! Public-key encryption from a trapdoor permutation and the Goldreich-Levin generator.

use serde::{Deserialize, Serialize};

use super::owtp::{owtp_gen, owtp_invert, RsaIndex, RsaTrapdoor};
use super::prng::{goldreich_levin_stream, OwpHandle, OwpKind};
use super::skes::check_width;
use crate::{BitString, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicKey {
    pub index: RsaIndex,
    /// Goldreich-Levin string.
    pub z: BitString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PkCiphertext {
    pub y: BitString,
    pub z: u64,
}

#[derive(Debug, Clone)]
pub struct PkesOwtp {
    pub msg_bits: usize,
    pub modulus_bits: usize,
}

impl PkesOwtp {
    pub fn keygen<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Result<(PublicKey, RsaTrapdoor)> {
        let kp = owtp_gen(self.modulus_bits, rng)?;
        let z = BitString::random(kp.index.width(), rng);
        Ok((PublicKey { index: kp.index, z }, kp.trapdoor))
    }
}

impl PublicKey {
    pub fn owp(&self) -> Result<OwpHandle> {
        OwpHandle::new(self.index.width(), OwpKind::Rsa(self.index), self.z.clone())
    }

    /// `G_P(r)` truncated or extended to `n_out` bits.
    pub fn pad(&self, r: u64, n_out: usize) -> Result<BitString> {
        let owp = self.owp()?;
        goldreich_levin_stream(&BitString::from_u64(r, owp.width())?, &owp, n_out)
    }
}

pub fn pkes_owtp_enc(pk: &PublicKey, x: &BitString, r: u64) -> Result<PkCiphertext> {
    if !pk.index.in_domain(r) {
        return Err(Error::Domain(format!("{r} is not a unit mod {}", pk.index.n)));
    }
    Ok(PkCiphertext {
        y: x.xor(&pk.pad(r, x.len())?)?,
        z: pk.index.eval(r)?,
    })
}

pub fn pkes_owtp_enc_random<R: rand::Rng + ?Sized>(pk: &PublicKey, x: &BitString, rng: &mut R) -> Result<PkCiphertext> {
    pkes_owtp_enc(pk, x, pk.index.sample_domain(rng))
}

pub fn pkes_owtp_dec(pk: &PublicKey, sk: &RsaTrapdoor, c: &PkCiphertext) -> Result<BitString> {
    let r = owtp_invert(&pk.index, sk, c.z).map_err(|e| Error::Decryption(e.to_string()))?;
    let pad = pk.pad(r, c.y.len())?;
    check_width(&pad, c.y.len())?;
    c.y.xor(&pad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip_and_pinned_pad() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = PkesOwtp {
            msg_bits: 10,
            modulus_bits: 16,
        };
        let (pk, sk) = s.keygen(&mut rng).unwrap();
        let x = BitString::random(10, &mut rng);
        let r = pk.index.sample_domain(&mut rng);
        let c = pkes_owtp_enc(&pk, &x, r).unwrap();
        assert_eq!(c.y.xor(&x).unwrap(), pk.pad(r, 10).unwrap());
        assert_eq!(pkes_owtp_dec(&pk, &sk, &c).unwrap(), x);
        let bad = PkCiphertext { y: c.y.clone(), z: 0 };
        assert!(matches!(pkes_owtp_dec(&pk, &sk, &bad), Err(Error::Decryption(_))));
    }
}
