//! Schnorr identification over a prime-order subgroup of `Z_p^*`, its
//! Fiat-Shamir signatures and programmable random oracles.

mod oracle;
mod signature;

use std::collections::BTreeMap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::attacks::dlog_bruteforce;
use crate::crypto::arith::{is_prime, mod_inv, mod_mul, mod_pow};
use crate::rng::{rng_for, stream, Rng};
use crate::{Error, Result};

pub use oracle::{encode_parts, semi_constant_oracle, OracleMode, RandomOracleTable};
pub use signature::{
    fs_lambda_sign, fs_lambda_sign_with, fs_lambda_verify, fs_sign, fs_sign_with, fs_verify, FsForm, FsSchnorr,
    FsSignature, RandomForger, ReplayForger,
};

/// Order-`q` subgroup of `Z_p^*` generated by `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Group {
    pub p: u64,
    pub q: u64,
    pub g: u64,
}

impl Group {
    pub const TOY: Group = Group { p: 23, q: 11, g: 2 };
    pub const LARGE: Group = Group {
        p: 4_194_287,
        q: 2_097_143,
        g: 4,
    };

    pub fn new(p: u64, q: u64, g: u64) -> Result<Self> {
        let grp = Group { p, q, g };
        grp.validate()?;
        Ok(grp)
    }

    pub fn validate(&self) -> Result<()> {
        let Group { p, q, g } = *self;
        if p > 1 << 24 || !is_prime(p) || !is_prime(q) || (p - 1) % q != 0 {
            return Err(Error::Param(format!("({p}, {q}) is not a prime-order subgroup setting")));
        }
        if g % p <= 1 || mod_pow(g, q, p) != 1 {
            return Err(Error::Param(format!("{g} does not have order {q} mod {p}")));
        }
        Ok(())
    }

    pub fn pow(&self, e: u64) -> u64 {
        mod_pow(self.g, e, self.p)
    }

    fn check_exponent(&self, e: u64) -> Result<()> {
        if e >= self.q {
            return Err(Error::Domain(format!("exponent {e} outside Z_{}", self.q)));
        }
        Ok(())
    }

    fn in_subgroup(&self, y: u64) -> bool {
        y > 0 && y < self.p && mod_pow(y, self.q, self.p) == 1
    }
}

/// Statement `x = g^w` with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardInstance {
    pub group: Group,
    pub x: u64,
    pub w: u64,
}

impl HardInstance {
    pub fn from_witness(group: Group, w: u64) -> Result<Self> {
        group.validate()?;
        group.check_exponent(w)?;
        Ok(Self {
            group,
            x: group.pow(w),
            w,
        })
    }

    pub fn holds(&self) -> bool {
        self.group.pow(self.w) == self.x
    }
}

pub fn inst_gen(group: Group, seed: u64) -> Result<HardInstance> {
    inst_gen_rng(group, &mut rng_for(seed, stream::KEY))
}

pub fn inst_gen_rng(group: Group, rng: &mut Rng) -> Result<HardInstance> {
    HardInstance::from_witness(group, rng.gen_range(0..group.q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SigmaTranscript {
    pub com: u64,
    pub ch: u64,
    pub resp: u64,
}

pub fn schnorr_commit(group: &Group, a: u64) -> Result<u64> {
    group.check_exponent(a)?;
    Ok(group.pow(a))
}

/// `a + ch·w mod q`.
pub fn schnorr_respond(inst: &HardInstance, a: u64, ch: u64) -> Result<u64> {
    let grp = &inst.group;
    grp.check_exponent(a)?;
    grp.check_exponent(ch)?;
    Ok((a + mod_mul(ch, inst.w, grp.q)) % grp.q)
}

/// `g^resp = com · x^ch`.
pub fn schnorr_verify(group: &Group, x: u64, t: &SigmaTranscript) -> bool {
    if t.ch >= group.q || t.resp >= group.q || !group.in_subgroup(t.com) {
        return false;
    }
    group.pow(t.resp) == mod_mul(t.com, mod_pow(x, t.ch, group.p), group.p)
}

/// Honest transcript for commitment randomness `a` and challenge `ch`.
pub fn schnorr_transcript(inst: &HardInstance, a: u64, ch: u64) -> Result<SigmaTranscript> {
    Ok(SigmaTranscript {
        com: schnorr_commit(&inst.group, a)?,
        ch,
        resp: schnorr_respond(inst, a, ch)?,
    })
}

/// `(resp₁ − resp₂)·(ch₁ − ch₂)^{-1} mod q`.
pub fn special_soundness_extract(group: &Group, x: u64, t1: &SigmaTranscript, t2: &SigmaTranscript) -> Result<u64> {
    if t1.com != t2.com {
        return Err(Error::Precondition("transcripts have different commitments".into()));
    }
    if t1.ch == t2.ch {
        return Err(Error::Precondition("transcripts have equal challenges".into()));
    }
    if !schnorr_verify(group, x, t1) || !schnorr_verify(group, x, t2) {
        return Err(Error::Precondition("transcripts must both accept".into()));
    }
    let q = group.q;
    let dr = (t1.resp + q - t2.resp) % q;
    let dc = (t1.ch + q - t2.ch) % q;
    let inv = mod_inv(dc, q).ok_or_else(|| Error::Domain("challenge difference not invertible".into()))?;
    Ok(mod_mul(dr, inv, q))
}

/// Transcript for chosen `(ch, resp)` with `com = g^resp · x^{−ch}`.
pub fn hvzk_simulate_with(group: &Group, x: u64, ch: u64, resp: u64) -> Result<SigmaTranscript> {
    group.check_exponent(ch)?;
    group.check_exponent(resp)?;
    let x_inv = mod_inv(x % group.p, group.p).ok_or_else(|| Error::Domain(format!("{x} is not a unit")))?;
    Ok(SigmaTranscript {
        com: mod_mul(group.pow(resp), mod_pow(x_inv, ch, group.p), group.p),
        ch,
        resp,
    })
}

pub fn hvzk_simulate(group: &Group, x: u64, rng: &mut Rng) -> Result<SigmaTranscript> {
    let ch = rng.gen_range(0..group.q);
    let resp = rng.gen_range(0..group.q);
    hvzk_simulate_with(group, x, ch, resp)
}

/// Every honest transcript over uniform `(a, ch)`, with multiplicities.
pub fn honest_transcript_distribution(inst: &HardInstance) -> Result<BTreeMap<SigmaTranscript, u64>> {
    let mut out = BTreeMap::new();
    for a in 0..inst.group.q {
        for ch in 0..inst.group.q {
            *out.entry(schnorr_transcript(inst, a, ch)?).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Every simulated transcript over uniform `(ch, resp)`, with multiplicities.
pub fn simulated_transcript_distribution(group: &Group, x: u64) -> Result<BTreeMap<SigmaTranscript, u64>> {
    let mut out = BTreeMap::new();
    for ch in 0..group.q {
        for resp in 0..group.q {
            *out.entry(hvzk_simulate_with(group, x, ch, resp)?).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// `Com(x; r) = g^r`.
pub fn lambda_commit(group: &Group, r: u64) -> Result<u64> {
    schnorr_commit(group, r)
}

/// Coins explaining a commitment: its discrete log, by exhaustive search.
pub fn lambda_smplrnd(group: &Group, com: u64) -> Result<u64> {
    if !group.in_subgroup(com) {
        return Err(Error::Domain(format!("{com} is outside the subgroup")));
    }
    dlog_bruteforce(group.p, group.g, com)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: Group = Group::TOY;

    #[test]
    fn toy_examples() {
        let inst = HardInstance::from_witness(G, 3).unwrap();
        assert_eq!(inst.x, 8);
        assert_eq!(HardInstance::from_witness(G, 0).unwrap().x, 1);
        let t = schnorr_transcript(&inst, 5, 2).unwrap();
        assert_eq!(t, SigmaTranscript { com: 9, ch: 2, resp: 0 });
        assert!(schnorr_verify(&G, 8, &t));
        let t2 = SigmaTranscript { com: 9, ch: 5, resp: 9 };
        assert!(schnorr_verify(&G, 8, &t2));
        assert_eq!(special_soundness_extract(&G, 8, &t, &t2).unwrap(), 3);
        assert!(special_soundness_extract(&G, 8, &t, &t).is_err());
        assert!(schnorr_respond(&inst, 11, 0).is_err());
    }

    #[test]
    fn group_validation() {
        Group::LARGE.validate().unwrap();
        assert!(Group::new(23, 11, 5).is_err());
        assert!(Group::new(22, 11, 2).is_err());
    }

    #[test]
    fn smplrnd_inverts_commit() {
        for r in 0..G.q {
            assert_eq!(lambda_smplrnd(&G, lambda_commit(&G, r).unwrap()).unwrap(), r);
        }
        assert_eq!(lambda_commit(&G, 0).unwrap(), 1);
        assert!(lambda_smplrnd(&G, 5).is_err());
    }

    #[test]
    fn hvzk_matches_honest_exhaustively() {
        for w in 0..G.q {
            let inst = HardInstance::from_witness(G, w).unwrap();
            assert_eq!(
                honest_transcript_distribution(&inst).unwrap(),
                simulated_transcript_distribution(&G, inst.x).unwrap()
            );
        }
    }
}
