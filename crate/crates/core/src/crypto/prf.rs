//! Keyed functions: an idealised random function and a 4-round Feistel network.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SecretKey;
use crate::rng::{mix, splitmix64};
use crate::{BitString, Error, Result};

const FEISTEL_ROUNDS: usize = 4;

/// `n ≤ 64` uniformly random bits determined by `words`.
pub(crate) fn ideal_bits(words: &[u64], n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let v: u64 = ChaCha8Rng::seed_from_u64(mix(words)).gen();
    if n == 64 {
        v
    } else {
        v >> (64 - n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrfBackend {
    /// Random function, evaluated by hashing `(key, x)` into a fresh ChaCha stream.
    Ideal,
    /// 4-round Feistel network; input and output widths must agree.
    Feistel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prf {
    backend: PrfBackend,
    key_word: u64,
    in_bits: usize,
    out_bits: usize,
    feistel: Option<Feistel>,
}

impl Prf {
    pub fn new(backend: PrfBackend, key: &SecretKey, in_bits: usize, out_bits: usize) -> Result<Self> {
        if in_bits == 0 || in_bits > 64 || out_bits == 0 || out_bits > 64 {
            return Err(Error::Param(format!("PRF widths {in_bits}->{out_bits} unsupported")));
        }
        let feistel = match backend {
            PrfBackend::Ideal => None,
            PrfBackend::Feistel => {
                if in_bits != out_bits {
                    return Err(Error::Param("Feistel PRF needs equal input and output widths".into()));
                }
                Some(Feistel::new(key, in_bits)?)
            }
        };
        Ok(Self {
            backend,
            key_word: key.word(),
            in_bits,
            out_bits,
            feistel,
        })
    }

    pub fn backend(&self) -> PrfBackend {
        self.backend
    }

    pub fn in_bits(&self) -> usize {
        self.in_bits
    }

    pub fn out_bits(&self) -> usize {
        self.out_bits
    }

    pub fn eval_u64(&self, x: u64) -> u64 {
        match &self.feistel {
            None => ideal_bits(&[self.key_word, self.in_bits as u64, self.out_bits as u64, x], self.out_bits),
            Some(f) => f.forward(x),
        }
    }

    pub fn eval(&self, x: &BitString) -> Result<BitString> {
        if x.len() != self.in_bits {
            return Err(Error::Width {
                expected: self.in_bits,
                got: x.len(),
            });
        }
        BitString::from_u64(self.eval_u64(x.to_u64()?), self.out_bits)
    }
}

/// `F_k(x)` with output width equal to the input width.
pub fn prf_eval(backend: PrfBackend, key: &SecretKey, x: &BitString) -> Result<BitString> {
    Prf::new(backend, key, x.len(), x.len())?.eval(x)
}

/// Balanced Feistel network on an even number of bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feistel {
    width: usize,
    round_keys: Option<[u64; FEISTEL_ROUNDS]>,
}

impl Feistel {
    pub fn new(key: &SecretKey, width: usize) -> Result<Self> {
        Self::check_width(width)?;
        let k = key.word();
        let mut round_keys = [0u64; FEISTEL_ROUNDS];
        for (i, rk) in round_keys.iter_mut().enumerate() {
            *rk = mix(&[k, 0x4645_4953, i as u64]);
        }
        Ok(Self {
            width,
            round_keys: Some(round_keys),
        })
    }

    /// All round functions identically zero.
    pub fn zero_rounds(width: usize) -> Result<Self> {
        Self::check_width(width)?;
        Ok(Self {
            width,
            round_keys: None,
        })
    }

    fn check_width(width: usize) -> Result<()> {
        if width == 0 || width % 2 == 1 || width > 64 {
            return Err(Error::Param(format!("Feistel width {width} must be even and at most 64")));
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn half_mask(&self) -> u64 {
        let h = self.width / 2;
        if h == 64 {
            u64::MAX
        } else {
            (1u64 << h) - 1
        }
    }

    fn round(&self, i: usize, half: u64) -> u64 {
        match &self.round_keys {
            None => 0,
            Some(keys) => splitmix64(keys[i] ^ half) & self.half_mask(),
        }
    }

    pub fn forward(&self, x: u64) -> u64 {
        let h = self.width / 2;
        let mask = self.half_mask();
        let (mut l, mut r) = ((x >> h) & mask, x & mask);
        for i in 0..FEISTEL_ROUNDS {
            (l, r) = (r, l ^ self.round(i, r));
        }
        (l << h) | r
    }

    pub fn inverse(&self, y: u64) -> u64 {
        let h = self.width / 2;
        let mask = self.half_mask();
        let (mut l, mut r) = ((y >> h) & mask, y & mask);
        for i in (0..FEISTEL_ROUNDS).rev() {
            (l, r) = (r ^ self.round(i, l), l);
        }
        (l << h) | r
    }
}

pub fn feistel_prp(key: &SecretKey, x: &BitString) -> Result<BitString> {
    let f = Feistel::new(key, x.len())?;
    BitString::from_u64(f.forward(x.to_u64()?), x.len())
}

pub fn feistel_prp_inv(key: &SecretKey, y: &BitString) -> Result<BitString> {
    let f = Feistel::new(key, y.len())?;
    BitString::from_u64(f.inverse(y.to_u64()?), y.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(v: u64) -> SecretKey {
        SecretKey::new(BitString::from_u64(v, 16).unwrap())
    }

    #[test]
    fn deterministic_and_width_checked() {
        let f = Prf::new(PrfBackend::Ideal, &key(3), 5, 7).unwrap();
        let x = BitString::from_u64(9, 5).unwrap();
        assert_eq!(f.eval(&x).unwrap(), f.eval(&x).unwrap());
        assert_eq!(f.eval(&x).unwrap().len(), 7);
        assert!(f.eval(&BitString::zeros(4)).is_err());
        assert_ne!(
            Prf::new(PrfBackend::Ideal, &key(4), 5, 7).unwrap().eval_u64(9),
            f.eval_u64(9),
            "keys separate (fixed seeds)"
        );
    }

    #[test]
    fn zero_round_feistel_is_identity() {
        let f = Feistel::zero_rounds(8).unwrap();
        for x in 0..256 {
            assert_eq!(f.forward(x), x);
        }
    }

    #[test]
    fn feistel_bijective_width_8() {
        let f = Feistel::new(&key(77), 8).unwrap();
        let mut seen = [false; 256];
        for x in 0..256u64 {
            let y = f.forward(x);
            assert!(!seen[y as usize]);
            seen[y as usize] = true;
            assert_eq!(f.inverse(y), x);
        }
        assert!(Feistel::new(&key(1), 7).is_err());
        assert!(Prf::new(PrfBackend::Feistel, &key(1), 6, 4).is_err());
    }
}
