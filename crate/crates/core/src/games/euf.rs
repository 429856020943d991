//! EUF-CMA in the random-oracle model.

use crate::rng::{rng_for, stream, Rng};
use crate::{Error, Result};

/// A signature scheme whose hash is an explicit oracle object.
pub trait SignatureScheme: Sync {
    type PublicKey: Clone;
    type SecretKey: Clone;
    type Signature: Clone;
    type Oracle;

    fn new_oracle(&self, seed: u64) -> Self::Oracle;
    fn keygen(&self, rng: &mut Rng) -> (Self::PublicKey, Self::SecretKey);
    fn sign(&self, sk: &Self::SecretKey, m: &[u8], oracle: &mut Self::Oracle, rng: &mut Rng) -> Result<Self::Signature>;
    fn verify(&self, pk: &Self::PublicKey, m: &[u8], sig: &Self::Signature, oracle: &mut Self::Oracle) -> Result<bool>;
    /// A direct query to the oracle.
    fn hash(&self, oracle: &mut Self::Oracle, input: &[u8]) -> u64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EufConfig {
    pub q_s: usize,
    pub q_h: usize,
    /// Hands the secret key to the forger; for harness self-tests.
    pub leak_sk: bool,
}

impl Default for EufConfig {
    fn default() -> Self {
        Self {
            q_s: 8,
            q_h: 64,
            leak_sk: false,
        }
    }
}

pub struct EufOracles<'a, S: SignatureScheme> {
    scheme: &'a S,
    pk: S::PublicKey,
    sk: S::SecretKey,
    oracle: S::Oracle,
    config: EufConfig,
    rng: Rng,
    signed: Vec<Vec<u8>>,
    hashes: usize,
}

impl<S: SignatureScheme> EufOracles<'_, S> {
    pub fn scheme(&self) -> &S {
        self.scheme
    }

    pub fn public_key(&self) -> &S::PublicKey {
        &self.pk
    }

    pub fn secret_key(&self) -> Option<&S::SecretKey> {
        self.config.leak_sk.then_some(&self.sk)
    }

    pub fn sign(&mut self, m: &[u8]) -> Result<S::Signature> {
        if self.signed.len() >= self.config.q_s {
            return Err(Error::Budget(format!("{} signing queries allowed", self.config.q_s)));
        }
        self.signed.push(m.to_vec());
        self.scheme.sign(&self.sk, m, &mut self.oracle, &mut self.rng)
    }

    pub fn hash(&mut self, input: &[u8]) -> Result<u64> {
        if self.hashes >= self.config.q_h {
            return Err(Error::Budget(format!("{} oracle queries allowed", self.config.q_h)));
        }
        self.hashes += 1;
        Ok(self.scheme.hash(&mut self.oracle, input))
    }

    pub fn signed(&self) -> &[Vec<u8>] {
        &self.signed
    }
}

pub trait Forger<S: SignatureScheme>: Sync {
    fn forge(&self, oracles: &mut EufOracles<'_, S>, rng: &mut Rng) -> Result<(Vec<u8>, S::Signature)>;
}

/// True iff the forgery verifies on a message never submitted for signing.
pub fn game_euf_cma<S: SignatureScheme>(scheme: &S, forger: &dyn Forger<S>, config: EufConfig, seed: u64) -> Result<bool> {
    let (pk, sk) = scheme.keygen(&mut rng_for(seed, stream::KEY));
    let mut o = EufOracles {
        scheme,
        pk,
        sk,
        oracle: scheme.new_oracle(crate::rng::mix(&[seed, stream::ORACLE])),
        config,
        rng: rng_for(seed, stream::CHALLENGER),
        signed: Vec::new(),
        hashes: 0,
    };
    let (m, sig) = forger.forge(&mut o, &mut rng_for(seed, stream::ADVERSARY))?;
    if o.signed.contains(&m) {
        return Ok(false);
    }
    scheme.verify(&o.pk, &m, &sig, &mut o.oracle)
}
