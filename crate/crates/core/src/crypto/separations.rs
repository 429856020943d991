//! Deliberately weakened schemes used as separation counterexamples.

use super::skes::{check_width, require_r, Ciphertext, Goldreich, KeyedGoldreich, KeyedSkes, Skes};
use super::SecretKey;
use crate::{BitString, Error, Result};

pub const CCA1_SEP: &str = "cca1-sep";
pub const KEY_HALF: &str = "key";

/// Goldreich scheme with a hidden message `m̄` whose encryption leaks the key.
///
/// Keys are `k ∥ m̄`. `Enc(m) = (Enc_k(m), Enc_k(m̄))` for `m ≠ m̄` and
/// `Enc(m̄) = (Enc_k(m̄), k)`; decryption reads the first half only.
#[derive(Debug, Clone)]
pub struct Cca1Sep {
    pub base: Goldreich,
}

impl Cca1Sep {
    pub fn new(n: usize) -> Self {
        // Key width differs from the ciphertext half so the two cases are never confused.
        Self {
            base: Goldreich {
                key_bits: n + 1,
                ..Goldreich::new(n)
            },
        }
    }

    /// `m̄` for a key of this scheme.
    pub fn hidden_message(&self, key: &SecretKey) -> Result<BitString> {
        check_width(key.bits(), self.key_bits())?;
        key.bits().slice(self.base.key_bits, self.key_bits())
    }

    pub fn join_key(&self, k: &BitString, m_bar: &BitString) -> Result<SecretKey> {
        check_width(k, self.base.key_bits)?;
        check_width(m_bar, self.base.m)?;
        Ok(SecretKey::new(k.concat(m_bar)))
    }
}

struct KeyedCca1Sep {
    k: BitString,
    m_bar: BitString,
    base: KeyedGoldreich,
}

impl Skes for Cca1Sep {
    fn name(&self) -> &'static str {
        CCA1_SEP
    }
    fn key_bits(&self) -> usize {
        self.base.key_bits + self.base.m
    }
    fn msg_bits(&self) -> usize {
        self.base.m
    }
    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkes>> {
        check_width(key.bits(), self.key_bits())?;
        let (k, m_bar) = key.bits().split(self.base.key_bits)?;
        let base = self.base.load_concrete(&SecretKey::new(k.clone()))?;
        Ok(Box::new(KeyedCca1Sep { k, m_bar, base }))
    }
    fn excluded_challenges(&self, key: &SecretKey) -> Result<Vec<BitString>> {
        Ok(vec![self.hidden_message(key)?])
    }
}

impl KeyedCca1Sep {
    fn half(&self, x: &BitString, r: &BitString) -> Result<Ciphertext> {
        let mut c = self.base.enc_with(x, Some(r))?;
        c.scheme = CCA1_SEP.into();
        Ok(c)
    }
}

impl KeyedSkes for KeyedCca1Sep {
    fn msg_bits(&self) -> usize {
        self.base.msg_bits()
    }
    /// Two base encryptions' worth; the second half is unused when `x = m̄`.
    fn rand_bits(&self) -> usize {
        2 * self.base.rand_bits()
    }
    fn enc_with(&self, x: &BitString, r: Option<&BitString>) -> Result<Ciphertext> {
        check_width(x, self.msg_bits())?;
        let (r1, r2) = require_r(r, self.rand_bits())?.split(self.base.rand_bits())?;
        let mut first = self.half(x, &r1)?;
        let second = if *x == self.m_bar {
            Ciphertext::new(KEY_HALF, self.k.clone(), None)
        } else {
            self.half(&self.m_bar, &r2)?
        };
        first.aux = Some(Box::new(second));
        Ok(first)
    }
    fn dec(&self, c: &Ciphertext) -> Result<BitString> {
        if c.scheme != CCA1_SEP {
            return Err(Error::Decryption(format!("expected a {CCA1_SEP} ciphertext, got {}", c.scheme)));
        }
        let mut first = c.clone();
        first.scheme = "goldreich".into();
        first.aux = None;
        self.base.dec(&first)
    }
}

/// Swaps the two halves of a [`Cca1Sep`] ciphertext.
pub fn swap_halves(c: &Ciphertext) -> Result<Ciphertext> {
    let second = c
        .aux
        .as_deref()
        .ok_or_else(|| Error::Param("ciphertext has no second half".into()))?;
    let mut swapped = second.clone();
    let mut first = c.clone();
    first.aux = None;
    swapped.aux = Some(Box::new(first));
    Ok(swapped)
}

/// `Dec_k(c)` unless `c` equals the forbidden challenge, in which case `None` (⊥).
pub fn cca2_restricted_dec(keyed: &dyn KeyedSkes, forbidden: &Ciphertext, c: &Ciphertext) -> Result<Option<BitString>> {
    if c == forbidden {
        return Ok(None);
    }
    keyed.dec(c).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn swapped_halves_reveal_hidden_message() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = Cca1Sep::new(6);
        let key = s.keygen(&mut rng);
        let kd = s.load(&key).unwrap();
        let m_bar = s.hidden_message(&key).unwrap();
        let m = m_bar.xor(&BitString::ones(6)).unwrap();
        let c = kd.enc(&m, &mut rng).unwrap();
        assert_eq!(kd.dec(&c).unwrap(), m);
        assert_eq!(kd.dec(&swap_halves(&c).unwrap()).unwrap(), m_bar);
        let leak = kd.enc(&m_bar, &mut rng).unwrap();
        let second = leak.aux.unwrap();
        assert_eq!(second.scheme, KEY_HALF);
        assert_eq!(second.payload, key.bits().slice(0, 7).unwrap());
    }

    #[test]
    fn restricted_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = Goldreich::new(5);
        let kd = s.load(&s.keygen(&mut rng)).unwrap();
        let x = BitString::random(5, &mut rng);
        let c = kd.enc(&x, &mut rng).unwrap();
        assert_eq!(cca2_restricted_dec(kd.as_ref(), &c, &c).unwrap(), None);
        let mut d = c.clone();
        d.payload = d.payload.xor(&BitString::from_u64(1, 5).unwrap()).unwrap();
        assert!(cca2_restricted_dec(kd.as_ref(), &c, &d).unwrap().is_some());
    }
}
