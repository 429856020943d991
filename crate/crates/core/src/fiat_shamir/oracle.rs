//! Seeded random oracles into `Z_q`.
//!
//! Answers are a pure function of `(seed, input)`, so the table only records
//! what was asked. Loaded entries take precedence, which is how dumped tables
//! replay.

use std::collections::BTreeMap;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rng::mix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum OracleMode {
    Uniform,
    /// Each fresh input answers `pinned` with probability `delta`.
    SemiConstant { delta: f64, pinned: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Entry {
    input: String,
    output: u64,
    pinned: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomOracleTable {
    seed: u64,
    q: u64,
    mode: OracleMode,
    entries: Vec<Entry>,
    #[serde(skip)]
    index: BTreeMap<Vec<u8>, usize>,
}

/// Length-prefixed concatenation of the parts.
pub fn encode_parts(parts: &[&[u8]]) -> Vec<u8> {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(&(p.len() as u64).to_be_bytes());
        out.extend_from_slice(p);
    }
    out
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn unhex(s: &str) -> Result<Vec<u8>> {
    if !s.len().is_multiple_of(2) {
        return Err(Error::Param("odd-length hex".into()));
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|e| Error::Param(e.to_string())))
        .collect()
}

impl RandomOracleTable {
    pub fn new(q: u64, mode: OracleMode, seed: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Param("empty range".into()));
        }
        if let OracleMode::SemiConstant { delta, pinned } = mode {
            if !(0.0..=1.0).contains(&delta) {
                return Err(Error::Param(format!("delta {delta} outside [0, 1]")));
            }
            if pinned >= q {
                return Err(Error::Domain(format!("pinned output {pinned} outside Z_{q}")));
            }
        }
        Ok(Self {
            seed,
            q,
            mode,
            entries: Vec::new(),
            index: BTreeMap::new(),
        })
    }

    pub fn uniform(q: u64, seed: u64) -> Self {
        Self::new(q, OracleMode::Uniform, seed).expect("q > 0")
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    fn sample(&self, input: &[u8]) -> (u64, bool) {
        let mut words: Vec<u64> = vec![self.seed, input.len() as u64];
        words.extend(input.chunks(8).map(|c| {
            let mut w = [0u8; 8];
            w[..c.len()].copy_from_slice(c);
            u64::from_be_bytes(w)
        }));
        let mut rng = ChaCha8Rng::seed_from_u64(mix(&words));
        let coin: f64 = rng.gen();
        let fresh = rng.gen_range(0..self.q);
        match self.mode {
            OracleMode::SemiConstant { delta, pinned } if coin < delta => (pinned, true),
            _ => (fresh, false),
        }
    }

    /// The answer and whether it came from the pinned branch.
    pub fn query_detailed(&mut self, input: &[u8]) -> (u64, bool) {
        if let Some(&i) = self.index.get(input) {
            let e = &self.entries[i];
            return (e.output, e.pinned);
        }
        let (output, pinned) = self.sample(input);
        self.index.insert(input.to_vec(), self.entries.len());
        self.entries.push(Entry {
            input: hex(input),
            output,
            pinned,
        });
        (output, pinned)
    }

    pub fn query(&mut self, input: &[u8]) -> u64 {
        self.query_detailed(input).0
    }

    pub fn query_parts(&mut self, parts: &[&[u8]]) -> u64 {
        self.query(&encode_parts(parts))
    }

    /// Distinct inputs asked so far.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dump(&self) -> String {
        serde_json::to_string(self).expect("tables serialise")
    }

    pub fn load(json: &str) -> Result<Self> {
        let mut t: Self = serde_json::from_str(json).map_err(|e| Error::Param(e.to_string()))?;
        for (i, e) in t.entries.iter().enumerate() {
            if e.output >= t.q {
                return Err(Error::Domain(format!("entry {i} outside Z_{}", t.q)));
            }
            t.index.insert(unhex(&e.input)?, i);
        }
        Ok(t)
    }
}

pub fn semi_constant_oracle(q: u64, delta: f64, pinned: u64, seed: u64) -> Result<RandomOracleTable> {
    RandomOracleTable::new(q, OracleMode::SemiConstant { delta, pinned }, seed)
}
