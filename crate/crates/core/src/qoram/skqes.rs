//! Secret-key quantum encryption.

use std::sync::Arc;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::crypto::prf::{Prf, PrfBackend};
use crate::crypto::skes::{check_width, require_r, KeyedSkes, Skes};
use crate::crypto::SecretKey;
use crate::{BitString, Error, Result};
use qsim::{partial_trace, qotp_apply_on, DensityMatrix, Gate, Permutation, PermutationOp};

/// Quantum ciphertext with its classical randomness, if public.
#[derive(Debug, Clone, PartialEq)]
pub struct QCiphertext {
    pub state: DensityMatrix,
    pub r: Option<BitString>,
}

pub trait Skqes: Send + Sync + std::fmt::Debug {
    fn name(&self) -> String;
    fn key_bits(&self) -> usize;
    fn msg_qubits(&self) -> usize;

    fn keygen(&self, rng: &mut dyn RngCore) -> SecretKey {
        SecretKey::random(self.key_bits(), rng)
    }

    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkqes>>;
}

pub trait KeyedSkqes: Send + Sync {
    fn msg_qubits(&self) -> usize;
    fn ct_qubits(&self) -> usize;
    fn rand_bits(&self) -> usize;

    /// Encrypts the message qubits `targets` of `rho`; expansion qubits are
    /// appended after all existing qubits, and the ciphertext register is
    /// `targets` followed by them.
    fn enc_on(&self, rho: &DensityMatrix, targets: &[usize], r: Option<&BitString>) -> Result<QCiphertext>;

    /// Decrypts the ciphertext register `targets`; expansion qubits are traced out.
    fn dec_on(&self, c: &QCiphertext, targets: &[usize]) -> Result<DensityMatrix>;

    fn enc(&self, rho: &DensityMatrix, rng: &mut dyn RngCore) -> Result<QCiphertext> {
        let r = (self.rand_bits() > 0).then(|| BitString::random(self.rand_bits(), rng));
        let targets: Vec<usize> = (0..rho.n_qubits()).collect();
        self.enc_on(rho, &targets, r.as_ref())
    }

    fn dec(&self, c: &QCiphertext) -> Result<DensityMatrix> {
        let targets: Vec<usize> = (0..c.state.n_qubits()).collect();
        self.dec_on(c, &targets)
    }
}

fn check_register(targets: &[usize], expected: usize) -> Result<()> {
    if targets.len() != expected {
        return Err(Error::Width {
            expected,
            got: targets.len(),
        });
    }
    Ok(())
}

pub(crate) fn bits_vec(b: &BitString) -> Vec<bool> {
    b.bits().to_vec()
}

/// QOTP under the pad `F_k(r)`, with `r` carried classically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scheme1 {
    pub n_qubits: usize,
    pub r_bits: usize,
    pub key_bits: usize,
}

impl Scheme1 {
    /// `|r| = 2n`.
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            r_bits: 2 * n_qubits,
            key_bits: 16,
        }
    }
}

pub struct KeyedScheme1 {
    n: usize,
    prf: Prf,
}

impl KeyedScheme1 {
    pub fn pad(&self, r: &BitString) -> Result<Vec<bool>> {
        Ok(bits_vec(&self.prf.eval(r)?))
    }
}

impl Scheme1 {
    pub fn load_concrete(&self, key: &SecretKey) -> Result<KeyedScheme1> {
        check_width(key.bits(), self.key_bits)?;
        if self.n_qubits == 0 || 2 * self.n_qubits > 64 {
            return Err(Error::Param(format!("{} qubits unsupported", self.n_qubits)));
        }
        Ok(KeyedScheme1 {
            n: self.n_qubits,
            prf: Prf::new(PrfBackend::Ideal, key, self.r_bits, 2 * self.n_qubits)?,
        })
    }
}

impl Skqes for Scheme1 {
    fn name(&self) -> String {
        "qotp-prf".into()
    }
    fn key_bits(&self) -> usize {
        self.key_bits
    }
    fn msg_qubits(&self) -> usize {
        self.n_qubits
    }
    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkqes>> {
        Ok(Box::new(self.load_concrete(key)?))
    }
}

impl KeyedSkqes for KeyedScheme1 {
    fn msg_qubits(&self) -> usize {
        self.n
    }
    fn ct_qubits(&self) -> usize {
        self.n
    }
    fn rand_bits(&self) -> usize {
        self.prf.in_bits()
    }
    fn enc_on(&self, rho: &DensityMatrix, targets: &[usize], r: Option<&BitString>) -> Result<QCiphertext> {
        check_register(targets, self.n)?;
        let r = require_r(r, self.rand_bits())?;
        Ok(QCiphertext {
            state: qotp_apply_on(&self.pad(r)?, rho, targets)?,
            r: Some(r.clone()),
        })
    }
    fn dec_on(&self, c: &QCiphertext, targets: &[usize]) -> Result<DensityMatrix> {
        check_register(targets, self.n)?;
        let r = c.r.as_ref().ok_or_else(|| Error::Decryption("missing r".into()))?;
        Ok(qotp_apply_on(&self.pad(r)?, &c.state, targets)?)
    }
}

/// Any classical scheme with an in-place form, applied to quantum plaintexts.
#[derive(Debug, Clone)]
pub struct Type2Lift {
    pub inner: Arc<dyn Skes>,
}

impl Type2Lift {
    pub fn new(inner: Arc<dyn Skes>) -> Self {
        Self { inner }
    }
}

pub struct KeyedLift {
    inner: Box<dyn KeyedSkes>,
    m: usize,
    core: usize,
    public_r: bool,
}

impl KeyedLift {
    pub fn classical(&self) -> &dyn KeyedSkes {
        self.inner.as_ref()
    }

    pub fn permutation(&self, r: Option<&BitString>) -> Result<Permutation> {
        self.inner.type2_permutation(r)
    }

    fn decrypting_permutation(&self, r: Option<&BitString>) -> Result<Permutation> {
        if self.public_r || self.inner.rand_bits() == 0 {
            Ok(self.inner.type2_permutation(r)?.inverse())
        } else {
            // Hidden randomness is left in the expansion register, which is discarded.
            Ok(self.inner.type2_permutation(Some(&BitString::zeros(self.inner.rand_bits())))?.inverse())
        }
    }
}

impl Skqes for Type2Lift {
    fn name(&self) -> String {
        format!("type2-lift({})", self.inner.name())
    }
    fn key_bits(&self) -> usize {
        self.inner.key_bits()
    }
    fn msg_qubits(&self) -> usize {
        self.inner.msg_bits()
    }
    fn keygen(&self, rng: &mut dyn RngCore) -> SecretKey {
        self.inner.keygen(rng)
    }
    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkqes>> {
        let inner = self.inner.load(key)?;
        let m = inner.msg_bits();
        let core = inner
            .core_bits()
            .ok_or_else(|| Error::Precondition("inner scheme has no in-place form".into()))?;
        let r = (inner.rand_bits() > 0).then(|| BitString::zeros(inner.rand_bits()));
        let sample = inner.enc_with(&BitString::zeros(m), r.as_ref())?;
        let probe = inner.type2_permutation(r.as_ref())?;
        if probe.domain_bits() != core {
            return Err(Error::Precondition("in-place form has the wrong width".into()));
        }
        Ok(Box::new(KeyedLift {
            public_r: sample.r.is_some(),
            inner,
            m,
            core,
        }))
    }
}

impl KeyedSkqes for KeyedLift {
    fn msg_qubits(&self) -> usize {
        self.m
    }
    fn ct_qubits(&self) -> usize {
        self.core
    }
    fn rand_bits(&self) -> usize {
        self.inner.rand_bits()
    }
    fn enc_on(&self, rho: &DensityMatrix, targets: &[usize], r: Option<&BitString>) -> Result<QCiphertext> {
        check_register(targets, self.m)?;
        let extra = self.core - self.m;
        let n = rho.n_qubits();
        let mut state = if extra > 0 {
            rho.tensor(&DensityMatrix::basis(extra, 0)?)?
        } else {
            rho.clone()
        };
        let mut reg = targets.to_vec();
        reg.extend(n..n + extra);
        let perm = self.permutation(r)?;
        state.apply(&Gate::Permutation(PermutationOp::new(perm)), &reg)?;
        Ok(QCiphertext {
            state,
            r: if self.public_r { r.cloned() } else { None },
        })
    }
    fn dec_on(&self, c: &QCiphertext, targets: &[usize]) -> Result<DensityMatrix> {
        check_register(targets, self.core)?;
        let mut state = c.state.clone();
        let inv = self.decrypting_permutation(c.r.as_ref())?;
        state.apply(&Gate::Permutation(PermutationOp::new(inv)), targets)?;
        if self.core == self.m {
            return Ok(state);
        }
        let drop = &targets[self.m..];
        let keep: Vec<usize> = (0..state.n_qubits()).filter(|q| !drop.contains(q)).collect();
        Ok(partial_trace(&state, &keep)?)
    }
}
