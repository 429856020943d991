//! Classical indistinguishability: IND, IND-CPA, IND-CCA1 and IND-CCA2.

use rand::Rng as _;

use super::challenge_bit;
use crate::crypto::separations::cca2_restricted_dec;
use crate::crypto::skes::{Ciphertext, KeyedSkes, Skes};
use crate::rng::{rng_for, stream, Rng};
use crate::{BitString, Error, Result};

/// Oracle access granted to the adversary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grant {
    Ind,
    Cpa,
    /// Decryption until the challenge is issued.
    Cca1,
    /// Decryption throughout, except on the challenge itself.
    Cca2,
}

impl Grant {
    pub fn name(self) -> &'static str {
        match self {
            Grant::Ind => "ind",
            Grant::Cpa => "ind-cpa",
            Grant::Cca1 => "ind-cca1",
            Grant::Cca2 => "ind-cca2",
        }
    }
}

pub trait IndOracles {
    fn msg_bits(&self) -> usize;
    fn enc(&mut self, x: &BitString) -> Result<Ciphertext>;
    /// `None` is ⊥.
    fn dec(&mut self, c: &Ciphertext) -> Result<Option<BitString>>;
    /// Ends the first stage; callable once.
    fn challenge(&mut self, m0: &BitString, m1: &BitString) -> Result<Ciphertext>;
}

/// Both stages of a classical adversary. State carried across the challenge
/// lives in the body of `play`.
pub trait IndAdversary: Sync {
    fn play(&self, oracles: &mut dyn IndOracles, rng: &mut Rng) -> Result<bool>;
}

/// Outputs a fair coin after a fixed challenge.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomGuess;

impl IndAdversary for RandomGuess {
    fn play(&self, o: &mut dyn IndOracles, rng: &mut Rng) -> Result<bool> {
        let m = o.msg_bits();
        o.challenge(&BitString::zeros(m), &BitString::ones(m))?;
        Ok(rng.gen())
    }
}

pub struct IndChallenger {
    keyed: Box<dyn KeyedSkes>,
    grant: Grant,
    b: bool,
    rng: Rng,
    excluded: Vec<BitString>,
    challenge: Option<Ciphertext>,
}

impl IndChallenger {
    pub fn new(scheme: &dyn Skes, grant: Grant, seed: u64, b: bool) -> Result<Self> {
        let key = scheme.keygen(&mut rng_for(seed, stream::KEY));
        Ok(Self {
            keyed: scheme.load(&key)?,
            excluded: scheme.excluded_challenges(&key)?,
            grant,
            b,
            rng: rng_for(seed, stream::CHALLENGER),
            challenge: None,
        })
    }

    pub fn challenged(&self) -> bool {
        self.challenge.is_some()
    }
}

impl IndOracles for IndChallenger {
    fn msg_bits(&self) -> usize {
        self.keyed.msg_bits()
    }

    fn enc(&mut self, x: &BitString) -> Result<Ciphertext> {
        if self.grant == Grant::Ind {
            return Err(Error::Discipline("no encryption oracle in the IND game".into()));
        }
        self.keyed.enc(x, &mut self.rng)
    }

    fn dec(&mut self, c: &Ciphertext) -> Result<Option<BitString>> {
        match (self.grant, &self.challenge) {
            (Grant::Ind | Grant::Cpa, _) => Err(Error::Discipline(format!("no decryption oracle in {}", self.grant.name()))),
            (Grant::Cca1, Some(_)) => Err(Error::Discipline("decryption after the challenge in ind-cca1".into())),
            (Grant::Cca1, None) => self.keyed.dec(c).map(Some),
            (Grant::Cca2, Some(ch)) => cca2_restricted_dec(self.keyed.as_ref(), ch, c),
            (Grant::Cca2, None) => self.keyed.dec(c).map(Some),
        }
    }

    fn challenge(&mut self, m0: &BitString, m1: &BitString) -> Result<Ciphertext> {
        if self.challenge.is_some() {
            return Err(Error::Discipline("challenge already issued".into()));
        }
        let m = self.keyed.msg_bits();
        for x in [m0, m1] {
            if x.len() != m {
                return Err(Error::Width { expected: m, got: x.len() });
            }
            if self.excluded.contains(x) {
                return Err(Error::Discipline("challenge message is excluded for this scheme".into()));
            }
        }
        let c = self.keyed.enc(if self.b { m1 } else { m0 }, &mut self.rng)?;
        self.challenge = Some(c.clone());
        Ok(c)
    }
}

pub fn game_ind_with_bit(scheme: &dyn Skes, grant: Grant, adversary: &dyn IndAdversary, seed: u64, b: bool) -> Result<bool> {
    let mut ch = IndChallenger::new(scheme, grant, seed, b)?;
    let guess = adversary.play(&mut ch, &mut rng_for(seed, stream::ADVERSARY))?;
    if !ch.challenged() {
        return Err(Error::Discipline("adversary never requested a challenge".into()));
    }
    Ok(guess == b)
}

/// One trial; true iff the adversary guesses the challenge bit.
pub fn game_ind(scheme: &dyn Skes, grant: Grant, adversary: &dyn IndAdversary, seed: u64) -> Result<bool> {
    game_ind_with_bit(scheme, grant, adversary, seed, challenge_bit(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::separations::Cca1Sep;
    use crate::crypto::skes::{Goldreich, Otp};

    struct Probe(Grant);

    impl IndAdversary for Probe {
        fn play(&self, o: &mut dyn IndOracles, _rng: &mut Rng) -> Result<bool> {
            let m = o.msg_bits();
            let x = BitString::zeros(m);
            let pre = o.enc(&x);
            let pre_dec = pre.as_ref().ok().map(|c| o.dec(c));
            let c = o.challenge(&x, &BitString::ones(m))?;
            match self.0 {
                Grant::Ind => assert!(pre.is_err() && o.dec(&c).is_err()),
                Grant::Cpa => assert!(pre.is_ok() && pre_dec.unwrap().is_err() && o.dec(&c).is_err()),
                Grant::Cca1 => {
                    assert_eq!(pre_dec.unwrap().unwrap(), Some(x.clone()));
                    assert!(matches!(o.dec(&c), Err(Error::Discipline(_))));
                }
                Grant::Cca2 => {
                    assert_eq!(o.dec(&c).unwrap(), None);
                    let pre = pre.unwrap();
                    if pre != c {
                        assert_eq!(o.dec(&pre).unwrap(), Some(x.clone()));
                    }
                }
            }
            assert!(o.challenge(&x, &x).is_err());
            Ok(false)
        }
    }

    #[test]
    fn oracle_discipline() {
        let s = Goldreich::new(4);
        for g in [Grant::Ind, Grant::Cpa, Grant::Cca1, Grant::Cca2] {
            game_ind(&s, g, &Probe(g), 3).unwrap();
        }
    }

    #[test]
    fn identical_arms_give_identical_views() {
        struct Same;
        impl IndAdversary for Same {
            fn play(&self, o: &mut dyn IndOracles, _rng: &mut Rng) -> Result<bool> {
                let x = BitString::zeros(o.msg_bits());
                let c = o.challenge(&x, &x)?;
                Ok(c.payload.get(0))
            }
        }
        for seed in 0..20 {
            let w0 = game_ind_with_bit(&Otp { n: 4 }, Grant::Ind, &Same, seed, false).unwrap();
            let w1 = game_ind_with_bit(&Otp { n: 4 }, Grant::Ind, &Same, seed, true).unwrap();
            assert_ne!(w0, w1);
        }
    }

    #[test]
    fn hidden_message_is_refused_as_challenge() {
        struct Cheat;
        impl IndAdversary for Cheat {
            fn play(&self, o: &mut dyn IndOracles, _rng: &mut Rng) -> Result<bool> {
                let m = o.msg_bits();
                for v in 0..1u64 << m {
                    let x = BitString::from_u64(v, m)?;
                    if let Err(e) = o.challenge(&x, &x) {
                        assert!(matches!(e, Error::Discipline(_)));
                        continue;
                    }
                    return Ok(true);
                }
                unreachable!()
            }
        }
        let s = Cca1Sep::new(3);
        let key = s.keygen(&mut rng_for(7, stream::KEY));
        let mut ch = IndChallenger::new(&s, Grant::Cca1, 7, false).unwrap();
        let m_bar = s.hidden_message(&key).unwrap();
        assert!(ch.challenge(&m_bar, &BitString::zeros(3)).is_err());
        game_ind(&s, Grant::Cca1, &Cheat, 7).unwrap();
    }
}
