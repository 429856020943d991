//! Ideal permutations, tabulated.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SecretKey;
use crate::rng::mix;
use crate::{Error, Result};
use qsim::Permutation;

pub const DEFAULT_PRP_CAP: usize = 14;

/// Uniform permutation of `{0,1}^domain_bits`, deterministic in the key.
pub fn sample_ideal_qprp(key: &SecretKey, domain_bits: usize) -> Result<Permutation> {
    sample_ideal_qprp_capped(key, domain_bits, DEFAULT_PRP_CAP)
}

pub fn sample_ideal_qprp_capped(key: &SecretKey, domain_bits: usize, cap: usize) -> Result<Permutation> {
    if domain_bits == 0 || domain_bits > cap {
        return Err(Error::Param(format!("permutation domain of {domain_bits} bits exceeds cap {cap}")));
    }
    let mut table: Vec<usize> = (0..1usize << domain_bits).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(&[key.word(), 0x0050_5250, domain_bits as u64]));
    table.shuffle(&mut rng);
    Ok(Permutation::from_forward(domain_bits, table)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BitString;

    #[test]
    fn deterministic_and_consistent() {
        let k = SecretKey::new(BitString::from_u64(12345, 20).unwrap());
        let p = sample_ideal_qprp(&k, 6).unwrap();
        assert_eq!(p, sample_ideal_qprp(&k, 6).unwrap());
        for z in 0..64 {
            assert_eq!(p.apply(p.apply_inverse(z)), z);
        }
        assert!(sample_ideal_qprp(&k, 15).is_err());
    }
}
