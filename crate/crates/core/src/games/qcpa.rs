//! IND-qCPA: classical challenge, quantum encryption queries.
//!
//! Each query applies the type-(1) oracle `|x, y⟩ ↦ |x, y ⊕ Enc_k(x; r)⟩`
//! with fresh `r` to registers of the adversary's pure state.

use super::challenge_bit;
use super::ind::{IndAdversary, IndOracles};
use crate::crypto::skes::{Ciphertext, KeyedSkes, Skes};
use crate::rng::{rng_for, stream, Rng};
use crate::{BitString, Error, Result};
use qsim::{measure_computational, type1_permutation, Gate, MeasureRandomness, PermutationOp, StateVector};

pub trait QcpaOracles {
    fn msg_bits(&self) -> usize;
    /// Width of `Ciphertext::to_bits`.
    fn ct_bits(&self) -> usize;
    fn enc_quantum(&mut self, state: &mut StateVector, x_reg: &[usize], y_reg: &[usize]) -> Result<()>;
    /// Applies the previous query's oracle again; two applications cancel.
    fn unquery(&mut self, state: &mut StateVector, x_reg: &[usize], y_reg: &[usize]) -> Result<()>;
    /// Parses measured ciphertext bits.
    fn parse_ciphertext(&self, bits: &BitString) -> Result<Ciphertext>;
    fn challenge(&mut self, m0: &BitString, m1: &BitString) -> Result<Ciphertext>;
}

pub trait QcpaAdversary: Sync {
    fn play(&self, oracles: &mut dyn QcpaOracles, rng: &mut Rng) -> Result<bool>;
}

pub struct QcpaChallenger {
    keyed: Box<dyn KeyedSkes>,
    b: bool,
    rng: Rng,
    excluded: Vec<BitString>,
    layout: Ciphertext,
    last: Option<PermutationOp>,
    challenged: bool,
}

impl QcpaChallenger {
    pub fn new(scheme: &dyn Skes, seed: u64, b: bool) -> Result<Self> {
        let key = scheme.keygen(&mut rng_for(seed, stream::KEY));
        let keyed = scheme.load(&key)?;
        let r = (keyed.rand_bits() > 0).then(|| BitString::zeros(keyed.rand_bits()));
        let layout = keyed.enc_with(&BitString::zeros(keyed.msg_bits()), r.as_ref())?;
        Ok(Self {
            excluded: scheme.excluded_challenges(&key)?,
            keyed,
            b,
            rng: rng_for(seed, stream::CHALLENGER),
            layout,
            last: None,
            challenged: false,
        })
    }

    fn oracle(&self, r: Option<&BitString>) -> Result<PermutationOp> {
        let m = self.keyed.msg_bits();
        let table = (0..1u64 << m)
            .map(|x| self.keyed.enc_with(&BitString::from_u64(x, m)?, r)?.to_bits().to_u64())
            .collect::<Result<Vec<_>>>()?;
        Ok(type1_permutation(&table, m, self.ct_bits())?)
    }

    fn apply(op: &PermutationOp, state: &mut StateVector, x_reg: &[usize], y_reg: &[usize]) -> Result<()> {
        let targets: Vec<usize> = x_reg.iter().chain(y_reg).copied().collect();
        Ok(state.apply(&Gate::Permutation(op.clone()), &targets)?)
    }
}

impl QcpaOracles for QcpaChallenger {
    fn msg_bits(&self) -> usize {
        self.keyed.msg_bits()
    }

    fn ct_bits(&self) -> usize {
        self.layout.to_bits().len()
    }

    fn enc_quantum(&mut self, state: &mut StateVector, x_reg: &[usize], y_reg: &[usize]) -> Result<()> {
        if x_reg.len() != self.msg_bits() || y_reg.len() != self.ct_bits() {
            return Err(Error::Width {
                expected: self.msg_bits() + self.ct_bits(),
                got: x_reg.len() + y_reg.len(),
            });
        }
        let bits = self.keyed.rand_bits();
        let r = (bits > 0).then(|| BitString::random(bits, &mut self.rng));
        let op = self.oracle(r.as_ref())?;
        Self::apply(&op, state, x_reg, y_reg)?;
        self.last = Some(op);
        Ok(())
    }

    fn unquery(&mut self, state: &mut StateVector, x_reg: &[usize], y_reg: &[usize]) -> Result<()> {
        let op = self
            .last
            .clone()
            .ok_or_else(|| Error::Discipline("no query to undo".into()))?;
        Self::apply(&op, state, x_reg, y_reg)
    }

    fn parse_ciphertext(&self, bits: &BitString) -> Result<Ciphertext> {
        self.layout.with_layout_of(bits)
    }

    fn challenge(&mut self, m0: &BitString, m1: &BitString) -> Result<Ciphertext> {
        if self.challenged {
            return Err(Error::Discipline("challenge already issued".into()));
        }
        let m = self.msg_bits();
        for x in [m0, m1] {
            if x.len() != m {
                return Err(Error::Width { expected: m, got: x.len() });
            }
            if self.excluded.contains(x) {
                return Err(Error::Discipline("challenge message is excluded for this scheme".into()));
            }
        }
        self.challenged = true;
        self.keyed.enc(if self.b { m1 } else { m0 }, &mut self.rng)
    }
}

/// A classical IND-CPA adversary whose encryption queries are basis-state
/// quantum queries followed by measurement of the ciphertext register.
pub struct EmbeddedClassical<'a>(pub &'a dyn IndAdversary);

struct BasisQueries<'a> {
    inner: &'a mut dyn QcpaOracles,
}

impl IndOracles for BasisQueries<'_> {
    fn msg_bits(&self) -> usize {
        self.inner.msg_bits()
    }

    fn enc(&mut self, x: &BitString) -> Result<Ciphertext> {
        let (m, c) = (self.inner.msg_bits(), self.inner.ct_bits());
        let mut state = StateVector::basis(m + c, (x.to_u64()? as usize) << c)?;
        let x_reg: Vec<usize> = (0..m).collect();
        let y_reg: Vec<usize> = (m..m + c).collect();
        self.inner.enc_quantum(&mut state, &x_reg, &y_reg)?;
        // The outcome is deterministic, so no randomness is consumed.
        let (meas, _) = measure_computational(&state, &y_reg, MeasureRandomness::Uniform(0.0))?;
        self.inner.parse_ciphertext(&BitString::from_u64(meas.outcome as u64, c)?)
    }

    fn dec(&mut self, _c: &Ciphertext) -> Result<Option<BitString>> {
        Err(Error::Discipline("no decryption oracle in ind-qcpa".into()))
    }

    fn challenge(&mut self, m0: &BitString, m1: &BitString) -> Result<Ciphertext> {
        self.inner.challenge(m0, m1)
    }
}

impl QcpaAdversary for EmbeddedClassical<'_> {
    fn play(&self, oracles: &mut dyn QcpaOracles, rng: &mut Rng) -> Result<bool> {
        self.0.play(&mut BasisQueries { inner: oracles }, rng)
    }
}

pub fn game_ind_qcpa_with_bit(scheme: &dyn Skes, adversary: &dyn QcpaAdversary, seed: u64, b: bool) -> Result<bool> {
    let mut ch = QcpaChallenger::new(scheme, seed, b)?;
    let guess = adversary.play(&mut ch, &mut rng_for(seed, stream::ADVERSARY))?;
    if !ch.challenged {
        return Err(Error::Discipline("adversary never requested a challenge".into()));
    }
    Ok(guess == b)
}

pub fn game_ind_qcpa(scheme: &dyn Skes, adversary: &dyn QcpaAdversary, seed: u64) -> Result<bool> {
    game_ind_qcpa_with_bit(scheme, adversary, seed, challenge_bit(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::skes::Goldreich;
    use crate::games::{game_ind, Grant};
    use rand::Rng as _;

    /// Learns one encryption of 0, then guesses from a payload bit.
    struct Peek;

    impl IndAdversary for Peek {
        fn play(&self, o: &mut dyn IndOracles, rng: &mut Rng) -> Result<bool> {
            let m = o.msg_bits();
            let c0 = o.enc(&BitString::zeros(m))?;
            let c = o.challenge(&BitString::zeros(m), &BitString::ones(m))?;
            Ok(c.payload.get(0) ^ c0.payload.get(0) ^ rng.gen::<bool>())
        }
    }

    #[test]
    fn embedded_classical_matches_cpa_game() {
        let s = Goldreich::new(3);
        for seed in 0..30 {
            let classical = game_ind(&s, Grant::Cpa, &Peek, seed).unwrap();
            let quantum = game_ind_qcpa(&s, &EmbeddedClassical(&Peek), seed).unwrap();
            assert_eq!(classical, quantum);
        }
    }

    #[test]
    fn query_then_unquery_is_identity() {
        struct Undo;
        impl QcpaAdversary for Undo {
            fn play(&self, o: &mut dyn QcpaOracles, rng: &mut Rng) -> Result<bool> {
                let (m, c) = (o.msg_bits(), o.ct_bits());
                let before = StateVector::random(m + c, rng)?;
                let mut s = before.clone();
                let x: Vec<usize> = (0..m).collect();
                let y: Vec<usize> = (m..m + c).collect();
                o.enc_quantum(&mut s, &x, &y)?;
                assert!(s.fidelity(&before)? < 1.0 - 1e-9);
                o.unquery(&mut s, &x, &y)?;
                assert!((s.fidelity(&before)? - 1.0).abs() < 1e-12);
                o.challenge(&BitString::zeros(m), &BitString::zeros(m))?;
                Ok(false)
            }
        }
        game_ind_qcpa(&Goldreich::new(2), &Undo, 4).unwrap();
    }
}
