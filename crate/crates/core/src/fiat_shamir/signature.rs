//! Fiat-Shamir signatures in the commitment form and the coin form.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::oracle::{encode_parts, RandomOracleTable};
use super::{inst_gen_rng, lambda_commit, schnorr_respond, schnorr_verify, Group, HardInstance, SigmaTranscript};
use crate::games::{EufOracles, Forger, SignatureScheme};
use crate::rng::Rng;
use crate::{Error, Result};

mod decimal {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `Sigma` carries the commitment; `Lambda` carries the commitment coins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum FsSignature {
    Sigma {
        #[serde(with = "decimal")]
        com: u64,
        #[serde(with = "decimal")]
        resp: u64,
    },
    Lambda {
        #[serde(with = "decimal")]
        r: u64,
        #[serde(with = "decimal")]
        resp: u64,
    },
}

impl FsSignature {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("signatures serialise")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Param(e.to_string()))
    }
}

fn be(v: u64) -> [u8; 8] {
    v.to_be_bytes()
}

/// `ch = h(pk ∥ com ∥ m)`.
fn sigma_challenge(x: u64, com: u64, m: &[u8], oracle: &mut RandomOracleTable) -> u64 {
    oracle.query(&encode_parts(&[&be(x), &be(com), m]))
}

/// `ch = h(pk ∥ m ∥ r)`.
fn lambda_challenge(x: u64, m: &[u8], r: u64, oracle: &mut RandomOracleTable) -> u64 {
    oracle.query(&encode_parts(&[&be(x), m, &be(r)]))
}

fn check_oracle(group: &Group, oracle: &RandomOracleTable) -> Result<()> {
    if oracle.q() != group.q {
        return Err(Error::Param(format!("oracle range Z_{} does not match Z_{}", oracle.q(), group.q)));
    }
    Ok(())
}

pub fn fs_sign_with(sk: &HardInstance, m: &[u8], a: u64, oracle: &mut RandomOracleTable) -> Result<FsSignature> {
    check_oracle(&sk.group, oracle)?;
    let com = lambda_commit(&sk.group, a)?;
    let ch = sigma_challenge(sk.x, com, m, oracle);
    Ok(FsSignature::Sigma {
        com,
        resp: schnorr_respond(sk, a, ch)?,
    })
}

pub fn fs_sign(sk: &HardInstance, m: &[u8], oracle: &mut RandomOracleTable, rng: &mut Rng) -> Result<FsSignature> {
    fs_sign_with(sk, m, rng.gen_range(0..sk.group.q), oracle)
}

pub fn fs_verify(group: &Group, x: u64, m: &[u8], sig: &FsSignature, oracle: &mut RandomOracleTable) -> Result<bool> {
    check_oracle(group, oracle)?;
    let FsSignature::Sigma { com, resp } = *sig else {
        return Ok(false);
    };
    let ch = sigma_challenge(x, com, m, oracle);
    Ok(schnorr_verify(group, x, &SigmaTranscript { com, ch, resp }))
}

/// Coins `r`, commitment `Com(x; r)`, challenge from `(pk, m, r)`.
pub fn fs_lambda_sign_with(sk: &HardInstance, m: &[u8], r: u64, oracle: &mut RandomOracleTable) -> Result<FsSignature> {
    check_oracle(&sk.group, oracle)?;
    lambda_commit(&sk.group, r)?;
    let ch = lambda_challenge(sk.x, m, r, oracle);
    Ok(FsSignature::Lambda {
        r,
        resp: schnorr_respond(sk, r, ch)?,
    })
}

pub fn fs_lambda_sign(sk: &HardInstance, m: &[u8], oracle: &mut RandomOracleTable, rng: &mut Rng) -> Result<FsSignature> {
    fs_lambda_sign_with(sk, m, rng.gen_range(0..sk.group.q), oracle)
}

pub fn fs_lambda_verify(group: &Group, x: u64, m: &[u8], sig: &FsSignature, oracle: &mut RandomOracleTable) -> Result<bool> {
    check_oracle(group, oracle)?;
    let FsSignature::Lambda { r, resp } = *sig else {
        return Ok(false);
    };
    if r >= group.q {
        return Ok(false);
    }
    let com = lambda_commit(group, r)?;
    let ch = lambda_challenge(x, m, r, oracle);
    Ok(schnorr_verify(group, x, &SigmaTranscript { com, ch, resp }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FsForm {
    Sigma,
    Lambda,
}

/// Either signature form as a [`SignatureScheme`] with a uniform oracle.
#[derive(Debug, Clone, Copy)]
pub struct FsSchnorr {
    pub group: Group,
    pub form: FsForm,
}

impl SignatureScheme for FsSchnorr {
    type PublicKey = u64;
    type SecretKey = HardInstance;
    type Signature = FsSignature;
    type Oracle = RandomOracleTable;

    fn new_oracle(&self, seed: u64) -> RandomOracleTable {
        RandomOracleTable::uniform(self.group.q, seed)
    }

    fn keygen(&self, rng: &mut Rng) -> (u64, HardInstance) {
        let inst = inst_gen_rng(self.group, rng).expect("group validated by the caller");
        (inst.x, inst)
    }

    fn sign(&self, sk: &HardInstance, m: &[u8], oracle: &mut RandomOracleTable, rng: &mut Rng) -> Result<FsSignature> {
        match self.form {
            FsForm::Sigma => fs_sign(sk, m, oracle, rng),
            FsForm::Lambda => fs_lambda_sign(sk, m, oracle, rng),
        }
    }

    fn verify(&self, pk: &u64, m: &[u8], sig: &FsSignature, oracle: &mut RandomOracleTable) -> Result<bool> {
        match self.form {
            FsForm::Sigma => fs_verify(&self.group, *pk, m, sig, oracle),
            FsForm::Lambda => fs_lambda_verify(&self.group, *pk, m, sig, oracle),
        }
    }

    fn hash(&self, oracle: &mut RandomOracleTable, input: &[u8]) -> u64 {
        oracle.query(input)
    }
}

/// Gets `m` signed and submits the signature on `m ∥ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReplayForger;

impl Forger<FsSchnorr> for ReplayForger {
    fn forge(&self, o: &mut EufOracles<'_, FsSchnorr>, rng: &mut Rng) -> Result<(Vec<u8>, FsSignature)> {
        let m: Vec<u8> = (0..8).map(|_| rng.gen()).collect();
        let sig = o.sign(&m)?;
        let mut fresh = m;
        fresh.push(0);
        Ok((fresh, sig))
    }
}

/// Uniform signature components on a fresh message.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomForger;

impl Forger<FsSchnorr> for RandomForger {
    fn forge(&self, o: &mut EufOracles<'_, FsSchnorr>, rng: &mut Rng) -> Result<(Vec<u8>, FsSignature)> {
        let FsSchnorr { group, form } = *o.scheme();
        let m: Vec<u8> = (0..8).map(|_| rng.gen()).collect();
        let resp = rng.gen_range(0..group.q);
        let sig = match form {
            FsForm::Sigma => FsSignature::Sigma {
                com: group.pow(rng.gen_range(0..group.q)),
                resp,
            },
            FsForm::Lambda => FsSignature::Lambda {
                r: rng.gen_range(0..group.q),
                resp,
            },
        };
        Ok((m, sig))
    }
}
