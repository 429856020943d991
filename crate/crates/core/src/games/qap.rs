//! QAP-IND-CQA: the PathQORAM analogue, observed through the default extractor.

use super::challenge_bit;
use crate::oram::LeafPrng;
use crate::qoram::{qoram_access, qoram_init, safe_extractor_default, ExtractorReport, QClient, QServer, QoramParams, QuantumDataRequest};
use crate::rng::{rng_for, stream, Rng};
use crate::{Error, Result};

pub trait QapAdversary: Sync {
    fn n_db(&self) -> usize;
    fn n_dat(&self) -> usize;
    fn play(&self, challenger: &mut QapChallenger, rng: &mut Rng) -> Result<bool>;
}

pub struct QapChallenger {
    client: QClient,
    server: QServer,
    b: bool,
    budget: [usize; 2],
    used: [usize; 2],
    challenged: bool,
}

impl QapChallenger {
    pub fn new(n_db: usize, n_dat: usize, prng: LeafPrng, q1: usize, q2: usize, seed: u64, b: bool) -> Result<Self> {
        let params = QoramParams {
            prng,
            ..QoramParams::new(n_db, n_dat)
        };
        let (client, server) = qoram_init(&params, seed)?;
        Ok(Self {
            client,
            server,
            b,
            budget: [q1, q2],
            used: [0, 0],
            challenged: false,
        })
    }

    pub fn params(&self) -> &QoramParams {
        self.client.params()
    }

    fn run(&mut self, qdr: &QuantumDataRequest) -> Result<ExtractorReport> {
        let (_, transcript) = qoram_access(&mut self.client, &mut self.server, qdr)?;
        Ok(safe_extractor_default(&self.server, &transcript))
    }

    pub fn access(&mut self, qdr: &QuantumDataRequest) -> Result<ExtractorReport> {
        let stage = self.challenged as usize;
        if self.used[stage] >= self.budget[stage] {
            return Err(Error::Budget(format!("stage {} allows {} accesses", stage + 1, self.budget[stage])));
        }
        self.used[stage] += 1;
        self.run(qdr)
    }

    /// The unchosen request, payload included, is discarded.
    pub fn challenge(&mut self, q0: &QuantumDataRequest, q1: &QuantumDataRequest) -> Result<ExtractorReport> {
        if self.challenged {
            return Err(Error::Discipline("challenge already issued".into()));
        }
        let n_db = self.params().n_db;
        for q in [q0, q1] {
            if q.id == 0 || q.id > n_db {
                return Err(Error::Param(format!("challenge id {} outside 1..={n_db}", q.id)));
            }
        }
        self.challenged = true;
        self.run(if self.b { q1 } else { q0 })
    }
}

pub fn game_qap_ind_cqa_with_bit(prng: LeafPrng, q1: usize, q2: usize, adversary: &dyn QapAdversary, seed: u64, b: bool) -> Result<bool> {
    let mut ch = QapChallenger::new(adversary.n_db(), adversary.n_dat(), prng, q1, q2, seed, b)?;
    let guess = adversary.play(&mut ch, &mut rng_for(seed, stream::ADVERSARY))?;
    if !ch.challenged {
        return Err(Error::Discipline("adversary never requested a challenge".into()));
    }
    Ok(guess == b)
}

pub fn game_qap_ind_cqa(prng: LeafPrng, q1: usize, q2: usize, adversary: &dyn QapAdversary, seed: u64) -> Result<bool> {
    game_qap_ind_cqa_with_bit(prng, q1, q2, adversary, seed, challenge_bit(seed))
}
