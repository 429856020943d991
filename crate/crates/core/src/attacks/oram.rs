//! Access-pattern distinguishers expected to fail against secure instantiations.

use std::collections::BTreeMap;

use qsim::DensityMatrix;

use crate::games::{ApAdversary, ApChallenger, QapAdversary, QapChallenger};
use crate::oram::DataRequest;
use crate::qoram::QuantumDataRequest;
use crate::rng::Rng;
use crate::{BitString, Result};

/// Accesses id 1 `k` times, challenges with ids 1 and 2 and guesses 0 iff
/// the challenge leaf is one of the most frequent leaves seen.
#[derive(Debug, Clone, Copy)]
pub struct LeafFrequency {
    pub k: usize,
    pub n_db: usize,
}

impl ApAdversary for LeafFrequency {
    fn n_db(&self) -> usize {
        self.n_db
    }

    fn play(&self, ch: &mut ApChallenger, _rng: &mut Rng) -> Result<bool> {
        let data = BitString::zeros(ch.params().n_dat);
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for _ in 0..self.k {
            *counts.entry(ch.access(&DataRequest::write(1, data.clone()))?.leaf).or_default() += 1;
        }
        let top = counts.values().copied().max().unwrap_or(0);
        let leaf = ch.challenge(&DataRequest::write(1, data.clone()), &DataRequest::write(2, data))?.leaf;
        Ok(counts.get(&leaf).copied().unwrap_or(0) != top)
    }
}

/// Ids differ, payloads equal; guesses 0 iff the challenge leaf repeats the
/// leaf of the last access to id 1.
#[derive(Debug, Clone, Copy)]
pub struct TagOnly {
    pub n_dat: usize,
}

impl QapAdversary for TagOnly {
    fn n_db(&self) -> usize {
        2
    }
    fn n_dat(&self) -> usize {
        self.n_dat
    }
    fn play(&self, ch: &mut QapChallenger, _rng: &mut Rng) -> Result<bool> {
        let zero = DensityMatrix::basis(self.n_dat, 0)?;
        let seen = ch.access(&QuantumDataRequest::write(1, zero.clone()))?.leaf;
        ch.access(&QuantumDataRequest::write(2, zero.clone()))?;
        let rep = ch.challenge(
            &QuantumDataRequest::write(1, zero.clone()),
            &QuantumDataRequest::write(2, zero),
        )?;
        Ok(rep.leaf != seen)
    }
}

/// Same id, payloads `|0…0⟩` and `|1…1⟩`; guesses from the parity of the
/// written-back ciphertext digests.
#[derive(Debug, Clone, Copy)]
pub struct PayloadOnly {
    pub n_dat: usize,
}

impl QapAdversary for PayloadOnly {
    fn n_db(&self) -> usize {
        2
    }
    fn n_dat(&self) -> usize {
        self.n_dat
    }
    fn play(&self, ch: &mut QapChallenger, _rng: &mut Rng) -> Result<bool> {
        let zero = DensityMatrix::basis(self.n_dat, 0)?;
        let ones = DensityMatrix::basis(self.n_dat, (1 << self.n_dat) - 1)?;
        ch.access(&QuantumDataRequest::write(1, zero.clone()))?;
        let rep = ch.challenge(&QuantumDataRequest::write(1, zero), &QuantumDataRequest::write(1, ones))?;
        let parity = rep
            .up
            .iter()
            .map(|v| v.digest.bytes().map(u32::from).sum::<u32>())
            .sum::<u32>()
            % 2;
        Ok(parity == 1)
    }
}
