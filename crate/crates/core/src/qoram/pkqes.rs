//! Public-key quantum encryption: a QOTP keyed by the Goldreich-Levin output on a trapdoor preimage.

use crate::crypto::owtp::{owtp_invert, RsaTrapdoor};
use crate::crypto::pkes::PublicKey;
use crate::{Error, Result};
use qsim::{qotp_apply, DensityMatrix};

use super::skqes::bits_vec;

#[derive(Debug, Clone, PartialEq)]
pub struct PkQCiphertext {
    pub state: DensityMatrix,
    pub z: u64,
}

/// Pad `G_P(r)` of `2n` bits for an `n`-qubit state.
pub fn pkqes_pad(pk: &PublicKey, r: u64, n_qubits: usize) -> Result<Vec<bool>> {
    Ok(bits_vec(&pk.pad(r, 2 * n_qubits)?))
}

pub fn pkqes_enc(pk: &PublicKey, rho: &DensityMatrix, r: u64) -> Result<PkQCiphertext> {
    if !pk.index.in_domain(r) {
        return Err(Error::Domain(format!("{r} is not a unit mod {}", pk.index.n)));
    }
    Ok(PkQCiphertext {
        state: qotp_apply(&pkqes_pad(pk, r, rho.n_qubits())?, rho)?,
        z: pk.index.eval(r)?,
    })
}

pub fn pkqes_enc_random<R: rand::Rng + ?Sized>(pk: &PublicKey, rho: &DensityMatrix, rng: &mut R) -> Result<PkQCiphertext> {
    pkqes_enc(pk, rho, pk.index.sample_domain(rng))
}

pub fn pkqes_dec(pk: &PublicKey, sk: &RsaTrapdoor, c: &PkQCiphertext) -> Result<DensityMatrix> {
    let r = owtp_invert(&pk.index, sk, c.z).map_err(|e| Error::Decryption(e.to_string()))?;
    Ok(qotp_apply(&pkqes_pad(pk, r, c.state.n_qubits())?, &c.state)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::pkes::PkesOwtp;
    use qsim::{trace_distance, StateVector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (pk, sk) = PkesOwtp {
            msg_bits: 4,
            modulus_bits: 16,
        }
        .keygen(&mut rng)
        .unwrap();
        for n in 1..=2 {
            let rho = StateVector::random(n, &mut rng).unwrap().to_density();
            let c = pkqes_enc_random(&pk, &rho, &mut rng).unwrap();
            assert!(trace_distance(&pkqes_dec(&pk, &sk, &c).unwrap(), &rho).unwrap() < 1e-10);
        }
    }
}
