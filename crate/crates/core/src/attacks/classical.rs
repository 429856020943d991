//! Adversaries for the classical separations.

use rand::Rng as _;

use crate::crypto::separations::{swap_halves, Cca1Sep, KEY_HALF};
use crate::crypto::Skes;
use crate::games::{IndAdversary, IndOracles};
use crate::rng::Rng;
use crate::{BitString, Result};

/// Encrypts both challenge messages beforehand and matches the challenge.
#[derive(Debug, Clone, Copy, Default)]
pub struct OtpReuse;

pub fn otp_reuse_attack() -> OtpReuse {
    OtpReuse
}

impl IndAdversary for OtpReuse {
    fn play(&self, o: &mut dyn IndOracles, rng: &mut Rng) -> Result<bool> {
        let m = o.msg_bits();
        let (m0, m1) = (BitString::zeros(m), BitString::ones(m));
        let c0 = o.enc(&m0)?;
        let c1 = o.enc(&m1)?;
        let c = o.challenge(&m0, &m1)?;
        Ok(if c == c0 {
            false
        } else if c == c1 {
            true
        } else {
            rng.gen()
        })
    }
}

/// Recovers the key of [`Cca1Sep`] in three queries and decrypts the challenge.
#[derive(Debug, Clone, Copy, Default)]
pub struct Cca1Counterexample;

pub fn cca1_counterexample_attack() -> Cca1Counterexample {
    Cca1Counterexample
}

impl Cca1Counterexample {
    /// `(k, m̄)`, or `None` if the target does not leak.
    fn recover(o: &mut dyn IndOracles) -> Result<Option<(BitString, BitString)>> {
        let m = o.msg_bits();
        let probe = BitString::zeros(m);
        let c = o.enc(&probe)?;
        let Some(aux) = c.aux.as_deref() else {
            return Ok(None);
        };
        if aux.scheme == KEY_HALF {
            return Ok(Some((aux.payload.clone(), probe)));
        }
        let Some(m_bar) = o.dec(&swap_halves(&c)?)? else {
            return Ok(None);
        };
        let leak = o.enc(&m_bar)?;
        Ok(match leak.aux.as_deref() {
            Some(a) if a.scheme == KEY_HALF => Some((a.payload.clone(), m_bar)),
            _ => None,
        })
    }
}

impl IndAdversary for Cca1Counterexample {
    fn play(&self, o: &mut dyn IndOracles, rng: &mut Rng) -> Result<bool> {
        let m = o.msg_bits();
        let recovered = Self::recover(o)?;
        let mut m0 = BitString::zeros(m);
        let mut m1 = BitString::ones(m);
        if let Some((_, m_bar)) = &recovered {
            let low = BitString::from_u64(1, m)?;
            if m0 == *m_bar {
                m0 = m0.xor(&low)?;
            }
            if m1 == *m_bar {
                m1 = m1.xor(&low)?;
            }
        }
        let c = o.challenge(&m0, &m1)?;
        let Some((k, m_bar)) = recovered else {
            return Ok(rng.gen());
        };
        let scheme = Cca1Sep::new(m);
        let keyed = scheme.load(&scheme.join_key(&k, &m_bar)?)?;
        Ok(keyed.dec(&c)? != m0)
    }
}

/// Flips every payload bit of the challenge and asks the restricted oracle.
#[derive(Debug, Clone, Copy, Default)]
pub struct Cca2Flip;

pub fn cca2_flip_attack() -> Cca2Flip {
    Cca2Flip
}

impl IndAdversary for Cca2Flip {
    fn play(&self, o: &mut dyn IndOracles, rng: &mut Rng) -> Result<bool> {
        let m = o.msg_bits();
        let (m0, m1) = (BitString::zeros(m), BitString::ones(m));
        let c = o.challenge(&m0, &m1)?;
        let mut flipped = c.clone();
        flipped.payload = c.payload.xor(&BitString::ones(c.payload.len()))?;
        match o.dec(&flipped)? {
            Some(x) if x.len() == m => Ok(x.xor(&BitString::ones(m))? != m0),
            _ => Ok(rng.gen()),
        }
    }
}
