//! AP-IND-CQA: the adversary sees PathORAM access patterns of its own requests.

use serde::{Deserialize, Serialize};

use super::challenge_bit;
use crate::oram::{oram_access, oram_init, AccessPattern, ClientState, DataRequest, LeafPrng, OramParams, ServerDb};
use crate::rng::{rng_for, stream, Rng};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApConfig {
    pub prng: LeafPrng,
    /// Accesses allowed before the challenge.
    pub q1: usize,
    /// Accesses allowed after the challenge.
    pub q2: usize,
    pub n_dat: usize,
    pub n_bkt: usize,
}

impl ApConfig {
    pub fn new(prng: LeafPrng, q1: usize, q2: usize) -> Self {
        Self {
            prng,
            q1,
            q2,
            n_dat: 4,
            n_bkt: 4,
        }
    }
}

pub trait ApAdversary: Sync {
    fn n_db(&self) -> usize;
    fn play(&self, challenger: &mut ApChallenger, rng: &mut Rng) -> Result<bool>;
}

pub struct ApChallenger {
    client: ClientState,
    server: ServerDb,
    b: bool,
    budget: [usize; 2],
    used: [usize; 2],
    challenged: bool,
}

impl ApChallenger {
    pub fn new(config: &ApConfig, n_db: usize, seed: u64, b: bool) -> Result<Self> {
        let params = OramParams {
            n_dat: config.n_dat,
            n_bkt: config.n_bkt,
            ..OramParams::new(n_db, config.prng)
        };
        let (client, server) = oram_init(&params, seed)?;
        Ok(Self {
            client,
            server,
            b,
            budget: [config.q1, config.q2],
            used: [0, 0],
            challenged: false,
        })
    }

    pub fn params(&self) -> &OramParams {
        self.client.params()
    }

    /// The client, for white-box checks only; adversaries must not use it.
    pub fn client(&self) -> &ClientState {
        &self.client
    }

    pub fn access(&mut self, dr: &DataRequest) -> Result<AccessPattern> {
        let stage = self.challenged as usize;
        if self.used[stage] >= self.budget[stage] {
            return Err(Error::Budget(format!("stage {} allows {} accesses", stage + 1, self.budget[stage])));
        }
        self.used[stage] += 1;
        Ok(oram_access(&mut self.client, &mut self.server, dr)?.1)
    }

    pub fn challenge(&mut self, dr0: &DataRequest, dr1: &DataRequest) -> Result<AccessPattern> {
        if self.challenged {
            return Err(Error::Discipline("challenge already issued".into()));
        }
        let n_db = self.params().n_db;
        for dr in [dr0, dr1] {
            if dr.id == 0 || dr.id > n_db {
                return Err(Error::Param(format!("challenge id {} outside 1..={n_db}", dr.id)));
            }
        }
        self.challenged = true;
        let dr = if self.b { dr1 } else { dr0 };
        Ok(oram_access(&mut self.client, &mut self.server, dr)?.1)
    }
}

pub fn game_ap_ind_cqa_with_bit(config: &ApConfig, adversary: &dyn ApAdversary, seed: u64, b: bool) -> Result<bool> {
    let mut ch = ApChallenger::new(config, adversary.n_db(), seed, b)?;
    let guess = adversary.play(&mut ch, &mut rng_for(seed, stream::ADVERSARY))?;
    if !ch.challenged {
        return Err(Error::Discipline("adversary never requested a challenge".into()));
    }
    Ok(guess == b)
}

pub fn game_ap_ind_cqa(config: &ApConfig, adversary: &dyn ApAdversary, seed: u64) -> Result<bool> {
    game_ap_ind_cqa_with_bit(config, adversary, seed, challenge_bit(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BitString;

    struct Greedy;

    impl ApAdversary for Greedy {
        fn n_db(&self) -> usize {
            4
        }
        fn play(&self, ch: &mut ApChallenger, _rng: &mut Rng) -> Result<bool> {
            ch.access(&DataRequest::read(1))?;
            assert!(matches!(ch.access(&DataRequest::read(1)), Err(Error::Budget(_))));
            assert!(ch.challenge(&DataRequest::read(0), &DataRequest::read(1)).is_err());
            let ap = ch.challenge(&DataRequest::read(1), &DataRequest::write(2, BitString::ones(4)))?;
            assert!(ch.challenge(&DataRequest::read(1), &DataRequest::read(1)).is_err());
            ch.access(&DataRequest::read(2))?;
            assert!(ch.access(&DataRequest::read(2)).is_err());
            Ok(ap.leaf & 1 == 1)
        }
    }

    #[test]
    fn budgets_and_single_challenge() {
        let cfg = ApConfig::new(LeafPrng::Secure, 1, 1);
        game_ap_ind_cqa(&cfg, &Greedy, 1).unwrap();
    }
}
