//! Security experiments and advantage estimation.
//!
//! Every game draws its challenge bit from a dedicated stream of the trial
//! seed, and each game has a `_with_bit` form. Running both bits on the same
//! seed (see [`estimate_advantage_paired`]) makes the estimate exactly zero
//! whenever the adversary's view does not depend on the bit.
//!
//! The harness certifies concrete adversaries and statistical null results;
//! it never certifies security against all adversaries. IND-CPA against
//! classical oracles is the same experiment whether or not the adversary is
//! quantum, so there is no separate post-quantum variant.

mod ap;
mod euf;
mod ind;
mod qap;
mod qcpa;
mod qind;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use ap::{game_ap_ind_cqa, game_ap_ind_cqa_with_bit, ApAdversary, ApChallenger, ApConfig};
pub use euf::{game_euf_cma, EufConfig, EufOracles, Forger, SignatureScheme};
pub use ind::{game_ind, game_ind_with_bit, Grant, IndAdversary, IndChallenger, IndOracles, RandomGuess};
pub use qap::{game_qap_ind_cqa, game_qap_ind_cqa_with_bit, QapAdversary, QapChallenger};
pub use qcpa::{game_ind_qcpa, game_ind_qcpa_with_bit, EmbeddedClassical, QcpaAdversary, QcpaChallenger, QcpaOracles};
pub use qind::{game_qind, game_qind_with_bit, QChallenge, QEncOracle, QindAdversary, QindGrant};

use crate::rng::{derive_seed, rng_for, stream};
use crate::Result;

pub type Params = BTreeMap<String, serde_json::Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub game: String,
    pub params: Params,
    pub trials: u64,
    pub successes: u64,
    pub advantage: f64,
    pub ci95: f64,
    pub seed: u64,
    pub runtime_ms: u64,
}

impl ExperimentResult {
    pub fn from_counts(game: &str, params: Params, trials: u64, successes: u64, seed: u64, runtime_ms: u64) -> Self {
        let p = if trials == 0 { 0.5 } else { successes as f64 / trials as f64 };
        Self {
            game: game.to_string(),
            params,
            trials,
            successes,
            advantage: p - 0.5,
            ci95: ci95(successes, trials),
            seed,
            runtime_ms,
        }
    }

    /// Standard deviation of the advantage estimate under a fair coin.
    pub fn null_sigma(&self) -> f64 {
        null_sigma(self.trials)
    }

    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Normal-approximation half-width; zero at the extreme proportions.
pub fn ci95(successes: u64, trials: u64) -> f64 {
    if trials == 0 {
        return 0.0;
    }
    let p = (successes as f64 / trials as f64).clamp(0.0, 1.0);
    1.96 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// `1 / (2√n)`.
pub fn null_sigma(trials: u64) -> f64 {
    0.5 / (trials as f64).sqrt()
}

/// Challenge bit of a trial seed.
pub fn challenge_bit(seed: u64) -> bool {
    rng_for(seed, stream::CHALLENGE_BIT).gen()
}

/// Runs `trials` independent trials in parallel; trial `i` gets seed
/// `derive_seed(seed, i)`. Counting is in trial order.
pub fn estimate_advantage<F>(game: &str, params: Params, trials: u64, seed: u64, trial: F) -> Result<ExperimentResult>
where
    F: Fn(u64) -> Result<bool> + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<Result<bool>> = (0..trials).into_par_iter().map(|i| trial(derive_seed(seed, i))).collect();
    let mut successes = 0u64;
    for o in outcomes {
        successes += o? as u64;
    }
    Ok(ExperimentResult::from_counts(
        game,
        params,
        trials,
        successes,
        seed,
        start.elapsed().as_millis() as u64,
    ))
}

/// Each trial seed is played with both challenge bits; `trials` counts both.
pub fn estimate_advantage_paired<F>(game: &str, params: Params, pairs: u64, seed: u64, trial: F) -> Result<ExperimentResult>
where
    F: Fn(u64, bool) -> Result<bool> + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<Result<u64>> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i);
            Ok(trial(s, false)? as u64 + trial(s, true)? as u64)
        })
        .collect();
    let mut successes = 0u64;
    for o in outcomes {
        successes += o?;
    }
    Ok(ExperimentResult::from_counts(
        game,
        params,
        2 * pairs,
        successes,
        seed,
        start.elapsed().as_millis() as u64,
    ))
}
