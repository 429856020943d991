//! Leaf prediction against PathORAM instantiated with Blum-Micali.
//!
//! The quantum discrete-log predictor is replaced by exhaustive search, which
//! is exact at these moduli.

use std::sync::OnceLock;

use rand::Rng as _;

use crate::crypto::arith::mod_mul;
use crate::crypto::prng::{bm_predicate, check_bm_params};
use crate::games::{ApAdversary, ApChallenger};
use crate::oram::DataRequest;
use crate::rng::Rng;
use crate::{BitString, Error, Result};

/// Largest modulus accepted by the exhaustive searches.
pub const MAX_DLOG_MODULUS: u64 = 1 << 24;

/// Smallest `x ≥ 0` with `g^x ≡ h (mod p)`.
pub fn dlog_bruteforce(p: u64, g: u64, h: u64) -> Result<u64> {
    if !(2..=MAX_DLOG_MODULUS).contains(&p) {
        return Err(Error::Param(format!("modulus {p} outside 2..=2^24")));
    }
    let h = h % p;
    let mut acc = 1 % p;
    for x in 0..p {
        if acc == h {
            return Ok(x);
        }
        acc = mod_mul(acc, g % p, p);
        if acc == 1 % p && x > 0 {
            break;
        }
    }
    Err(Error::Domain(format!("{h} is not in the subgroup generated by {g} mod {p}")))
}

/// `g^x mod p` and its inverse for every `x`, by one pass over the group.
#[derive(Debug, Clone)]
pub struct BmTables {
    pub p: u64,
    pub g: u64,
    pow: Vec<u32>,
    log: Vec<u32>,
}

impl BmTables {
    pub fn new(p: u64, g: u64) -> Result<Self> {
        check_bm_params(p, g)?;
        if p > MAX_DLOG_MODULUS {
            return Err(Error::Param(format!("modulus {p} exceeds 2^24")));
        }
        let mut pow = vec![0u32; p as usize];
        let mut log = vec![0u32; p as usize];
        let mut acc = 1u64;
        for x in 0..p - 1 {
            pow[x as usize] = acc as u32;
            log[acc as usize] = x as u32;
            acc = mod_mul(acc, g, p);
        }
        pow[(p - 1) as usize] = 1;
        Ok(Self { p, g, pow, log })
    }

    /// One generator step `s ↦ g^s`.
    pub fn step(&self, s: u64) -> u64 {
        self.pow[s as usize] as u64
    }

    /// The preimage of `s` under [`Self::step`], within `1..p`.
    pub fn unstep(&self, s: u64) -> u64 {
        match self.log[s as usize] as u64 {
            0 => self.p - 1,
            x => x,
        }
    }

    /// Next `n` output bits from state `s`, MSB first; advances `s`.
    pub fn output(&self, s: &mut u64, n: usize) -> u64 {
        let mut out = 0;
        for _ in 0..n {
            *s = self.step(*s);
            out = (out << 1) | bm_predicate(*s, self.p) as u64;
        }
        out
    }

    /// A state consistent with consecutive truncated outputs, each the low
    /// `n_tree` bits of an `n_tag`-bit output; the first match is returned.
    pub fn recover_state(&self, observed: &[u64], n_tag: usize, n_tree: usize) -> Option<u64> {
        if observed.is_empty() {
            return None;
        }
        let mask = (1u64 << n_tree) - 1;
        (1..self.p).find(|&s0| {
            let mut s = s0;
            observed.iter().all(|&o| self.output(&mut s, n_tag) & mask == o)
        })
    }
}

/// AP-IND-CQA adversary: `k` writes to one id, state recovery, leaf
/// prediction for the challenge and a sanity check on the second stage.
#[derive(Debug)]
pub struct BmOramAttack {
    pub k: usize,
    pub n_db: usize,
    pub p: u64,
    pub g: u64,
    tables: OnceLock<Result<BmTables>>,
}

pub fn bm_oram_attack(k: usize) -> BmOramAttack {
    BmOramAttack::new(k, 16, 65537, 3)
}

/// What the attack learned before the challenge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmPrediction {
    /// Recovered state right after the last initial position was drawn.
    pub state: u64,
    /// Initial position of every id.
    pub initial: Vec<u64>,
    /// Predicted current position of the attacked id.
    pub target: u64,
    /// The output that follows `target`.
    pub after: u64,
}

impl BmOramAttack {
    pub fn new(k: usize, n_db: usize, p: u64, g: u64) -> Self {
        Self {
            k,
            n_db,
            p,
            g,
            tables: OnceLock::new(),
        }
    }

    pub fn tables(&self) -> Result<&BmTables> {
        self.tables
            .get_or_init(|| BmTables::new(self.p, self.g))
            .as_ref()
            .map_err(|e| Error::Param(e.to_string()))
    }

    /// Runs the first stage on id `i`; returns the leaves seen and, if the
    /// state was recovered, the prediction.
    pub fn observe(&self, ch: &mut ApChallenger, i: usize) -> Result<(Vec<u64>, Option<BmPrediction>)> {
        let data = BitString::zeros(ch.params().n_dat);
        let mut history = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            history.push(ch.access(&DataRequest::write(i, data.clone()))?.leaf);
        }
        if history.len() < 2 {
            return Ok((history, None));
        }
        let (n_tag, n_tree) = (ch.params().n_tag(), ch.params().n_tree());
        let n_db = ch.params().n_db;
        let mask = (1u64 << n_tree) - 1;
        let t = self.tables()?;
        // Access 1 shows the initial position; access j ≥ 2 shows output n_db + j − 1.
        let Some(state) = t.recover_state(&history[1..], n_tag, n_tree) else {
            return Ok((history, None));
        };
        let mut s = state;
        for _ in 1..history.len() {
            t.output(&mut s, n_tag);
        }
        let target = t.output(&mut s, n_tag) & mask;
        let after = t.output(&mut s, n_tag) & mask;
        // Roll back over the initial draws.
        let mut s = state;
        let mut initial = vec![0; n_db];
        for id in (0..n_db).rev() {
            let mut bits = 0;
            for j in 0..n_tag {
                bits |= (bm_predicate(s, t.p) as u64) << j;
                s = t.unstep(s);
            }
            initial[id] = bits & mask;
        }
        if initial[i - 1] != history[0] {
            return Ok((history, None));
        }
        Ok((
            history,
            Some(BmPrediction {
                state,
                initial,
                target,
                after,
            }),
        ))
    }
}

impl ApAdversary for BmOramAttack {
    fn n_db(&self) -> usize {
        self.n_db
    }

    fn play(&self, ch: &mut ApChallenger, rng: &mut Rng) -> Result<bool> {
        let i = 1;
        let data = BitString::zeros(ch.params().n_dat);
        let (_, prediction) = self.observe(ch, i)?;
        let j = prediction
            .as_ref()
            .and_then(|pr| (1..=self.n_db).find(|&j| j != i && pr.initial[j - 1] != pr.target))
            .unwrap_or(2);
        let ap = ch.challenge(&DataRequest::write(i, data.clone()), &DataRequest::write(j, data))?;
        let Some(pr) = prediction else {
            return Ok(rng.gen());
        };
        let guess = ap.leaf != pr.target;
        let check = ch.access(&DataRequest::read(i))?.leaf;
        let expected = if guess { pr.target } else { pr.after };
        Ok(if check == expected { guess } else { rng.gen() })
    }
}
