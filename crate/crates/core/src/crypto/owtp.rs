//! Toy RSA trapdoor permutation on `Z_n^*`.

use serde::{Deserialize, Serialize};

use super::arith::{bit_len, gcd, is_prime, mod_inv, mod_pow};
use crate::{Error, Result};

pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsaIndex {
    pub n: u64,
    pub e: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsaTrapdoor {
    pub d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrapdoorKeyPair {
    pub index: RsaIndex,
    pub trapdoor: RsaTrapdoor,
}

impl RsaIndex {
    pub fn in_domain(&self, x: u64) -> bool {
        x > 0 && x < self.n && gcd(x, self.n) == 1
    }

    /// Bits needed for a domain element.
    pub fn width(&self) -> usize {
        bit_len(self.n - 1)
    }

    pub fn eval(&self, x: u64) -> Result<u64> {
        if !self.in_domain(x) {
            return Err(Error::Domain(format!("{x} is not a unit mod {}", self.n)));
        }
        Ok(mod_pow(x, self.e, self.n))
    }

    /// Rejection-samples a unit.
    pub fn sample_domain<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        loop {
            let x = rng.gen_range(1..self.n);
            if gcd(x, self.n) == 1 {
                return x;
            }
        }
    }
}

impl TrapdoorKeyPair {
    pub fn from_primes(p: u64, q: u64, e: u64) -> Result<Self> {
        if !is_prime(p) || !is_prime(q) || p == q {
            return Err(Error::Param(format!("{p}, {q} must be distinct primes")));
        }
        let n = p
            .checked_mul(q)
            .filter(|&n| n <= MAX_MODULUS)
            .ok_or_else(|| Error::Param("modulus exceeds 2^32".into()))?;
        let phi = (p - 1) * (q - 1);
        let d = mod_inv(e, phi).ok_or_else(|| Error::Param(format!("e = {e} not invertible mod {phi}")))?;
        Ok(Self {
            index: RsaIndex { n, e },
            trapdoor: RsaTrapdoor { d },
        })
    }
}

/// Modulus with roughly `bits` bits (`4 ≤ bits ≤ 32`), `e = 3` when admissible.
pub fn owtp_gen<R: rand::Rng + ?Sized>(bits: usize, rng: &mut R) -> Result<TrapdoorKeyPair> {
    if !(4..=32).contains(&bits) {
        return Err(Error::Param(format!("modulus size {bits} outside 4..=32")));
    }
    let half = bits / 2;
    let lo = 1u64 << (half - 1);
    let hi = 1u64 << half;
    let random_prime = |rng: &mut R| loop {
        let c = rng.gen_range(lo.max(3)..hi.max(4));
        if is_prime(c) {
            return c;
        }
    };
    loop {
        let p = random_prime(rng);
        let q = random_prime(rng);
        for e in [3u64, 5, 7, 17, 65537] {
            if let Ok(kp) = TrapdoorKeyPair::from_primes(p, q, e) {
                if kp.index.n > 6 {
                    return Ok(kp);
                }
            }
        }
    }
}

pub fn owtp_eval(index: &RsaIndex, x: u64) -> Result<u64> {
    index.eval(x)
}

/// Inverts with the trapdoor and re-evaluates; a bad trapdoor is an error.
pub fn owtp_invert(index: &RsaIndex, trapdoor: &RsaTrapdoor, y: u64) -> Result<u64> {
    if !index.in_domain(y) {
        return Err(Error::Domain(format!("{y} is not a unit mod {}", index.n)));
    }
    let x = mod_pow(y, trapdoor.d, index.n);
    if index.eval(x)? != y {
        return Err(Error::Decryption("trapdoor does not invert this index".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn textbook_example() {
        let kp = TrapdoorKeyPair::from_primes(3, 11, 3).unwrap();
        assert_eq!(kp.index.n, 33);
        assert_eq!(kp.trapdoor.d, 7);
        assert_eq!(owtp_eval(&kp.index, 2).unwrap(), 8);
        assert_eq!(owtp_invert(&kp.index, &kp.trapdoor, 8).unwrap(), 2);
        assert!(owtp_eval(&kp.index, 3).is_err());
        assert!(owtp_eval(&kp.index, 0).is_err());
    }

    #[test]
    fn generated_pairs_invert() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for bits in [8, 12, 16, 20] {
            let kp = owtp_gen(bits, &mut rng).unwrap();
            assert!(kp.index.n < 1 << bits);
            for _ in 0..20 {
                let x = kp.index.sample_domain(&mut rng);
                let y = owtp_eval(&kp.index, x).unwrap();
                assert_eq!(owtp_invert(&kp.index, &kp.trapdoor, y).unwrap(), x);
            }
        }
    }
}
