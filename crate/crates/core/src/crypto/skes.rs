//! Secret-key encryption schemes.
//!
//! A scheme is split into a public description ([`Skes`]) and a keyed instance
//! ([`KeyedSkes`]). Randomised encryption always draws exactly
//! [`KeyedSkes::rand_bits`] bits from the caller's generator and then calls
//! [`KeyedSkes::enc_with`], so pinned-randomness and sampled encryptions agree.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::prf::{Prf, PrfBackend};
use super::prp::sample_ideal_qprp;
use super::SecretKey;
use crate::{BitString, Error, Result};
use qsim::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ciphertext {
    pub scheme: String,
    pub payload: BitString,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<BitString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<Box<Ciphertext>>,
}

impl Ciphertext {
    pub fn new(scheme: &str, payload: BitString, r: Option<BitString>) -> Self {
        Self {
            scheme: scheme.to_string(),
            payload,
            r,
            aux: None,
        }
    }

    /// `payload ∥ r ∥ aux`.
    pub fn to_bits(&self) -> BitString {
        let mut out = self.payload.clone();
        if let Some(r) = &self.r {
            out = out.concat(r);
        }
        if let Some(a) = &self.aux {
            out = out.concat(&a.to_bits());
        }
        out
    }

    /// Reads `bits` back into the field layout of `self`; inverse of [`Self::to_bits`].
    pub fn with_layout_of(&self, bits: &BitString) -> Result<Ciphertext> {
        check_width(bits, self.to_bits().len())?;
        self.read_layout(bits, 0)
    }

    fn read_layout(&self, bits: &BitString, start: usize) -> Result<Ciphertext> {
        let mut at = start + self.payload.len();
        let payload = bits.slice(start, at)?;
        let r = match &self.r {
            Some(r) => {
                at += r.len();
                Some(bits.slice(at - r.len(), at)?)
            }
            None => None,
        };
        let aux = match &self.aux {
            Some(a) => Some(Box::new(a.read_layout(bits, at)?)),
            None => None,
        };
        Ok(Ciphertext {
            scheme: self.scheme.clone(),
            payload,
            r,
            aux,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ciphertexts serialise")
    }

    fn expect_scheme(&self, scheme: &str) -> Result<()> {
        if self.scheme != scheme {
            return Err(Error::Decryption(format!("expected a {scheme} ciphertext, got {}", self.scheme)));
        }
        Ok(())
    }
}

pub(crate) fn check_width(x: &BitString, expected: usize) -> Result<()> {
    if x.len() != expected {
        return Err(Error::Width {
            expected,
            got: x.len(),
        });
    }
    Ok(())
}

pub(crate) fn require_r(r: Option<&BitString>, bits: usize) -> Result<&BitString> {
    let r = r.ok_or_else(|| Error::Param("this scheme needs randomness".into()))?;
    check_width(r, bits)?;
    Ok(r)
}

pub trait Skes: Send + Sync + std::fmt::Debug {
    fn name(&self) -> &'static str;
    fn key_bits(&self) -> usize;
    fn msg_bits(&self) -> usize;

    fn keygen(&self, rng: &mut dyn RngCore) -> SecretKey {
        SecretKey::random(self.key_bits(), rng)
    }

    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkes>>;

    /// Messages the challenger refuses as challenge arms under `key`.
    fn excluded_challenges(&self, _key: &SecretKey) -> Result<Vec<BitString>> {
        Ok(Vec::new())
    }
}

pub trait KeyedSkes: Send + Sync {
    fn msg_bits(&self) -> usize;

    /// Width of the encryption randomness; 0 for deterministic schemes.
    fn rand_bits(&self) -> usize;

    fn enc_with(&self, x: &BitString, r: Option<&BitString>) -> Result<Ciphertext>;

    fn dec(&self, c: &Ciphertext) -> Result<BitString>;

    fn enc(&self, x: &BitString, rng: &mut dyn RngCore) -> Result<Ciphertext> {
        let r = (self.rand_bits() > 0).then(|| BitString::random(self.rand_bits(), rng));
        self.enc_with(x, r.as_ref())
    }

    /// Width of [`Ciphertext::to_bits`].
    fn ct_bits(&self) -> Result<usize> {
        let r = (self.rand_bits() > 0).then(|| BitString::zeros(self.rand_bits()));
        Ok(self.enc_with(&BitString::zeros(self.msg_bits()), r.as_ref())?.to_bits().len())
    }

    /// Width of the message-dependent ciphertext part, if the scheme declares one.
    fn core_bits(&self) -> Option<usize> {
        None
    }

    /// The core function `f(k, r, x)`.
    fn core_eval(&self, _x: &BitString, _r: Option<&BitString>) -> Result<BitString> {
        Err(Error::Precondition("scheme declares no core function".into()))
    }

    /// `g(k, r, y)` with `g(k, r, f(k, r, x)) = x`.
    fn core_invert(&self, _y: &BitString, _r: Option<&BitString>) -> Result<BitString> {
        Err(Error::Precondition("scheme declares no core function".into()))
    }

    /// In-place encryption permutation on `core_bits` for pinned `r`; a message
    /// enters as `x ∥ 0`.
    fn type2_permutation(&self, _r: Option<&BitString>) -> Result<Permutation> {
        Err(Error::Precondition("scheme has no in-place form".into()))
    }
}

fn xor_table(bits: usize, pad: u64) -> Result<Permutation> {
    Ok(Permutation::from_forward(
        bits,
        (0..1usize << bits).map(|x| x ^ pad as usize).collect(),
    )?)
}

/// One-time pad on `n` bits.
#[derive(Debug, Clone)]
pub struct Otp {
    pub n: usize,
}

struct KeyedOtp {
    key: BitString,
}

impl Skes for Otp {
    fn name(&self) -> &'static str {
        "otp"
    }
    fn key_bits(&self) -> usize {
        self.n
    }
    fn msg_bits(&self) -> usize {
        self.n
    }
    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkes>> {
        check_width(key.bits(), self.n)?;
        Ok(Box::new(KeyedOtp { key: key.bits().clone() }))
    }
}

pub fn otp_enc(key: &SecretKey, x: &BitString) -> Result<BitString> {
    key.bits().xor(x)
}

pub fn otp_dec(key: &SecretKey, y: &BitString) -> Result<BitString> {
    key.bits().xor(y)
}

impl KeyedSkes for KeyedOtp {
    fn msg_bits(&self) -> usize {
        self.key.len()
    }
    fn rand_bits(&self) -> usize {
        0
    }
    fn enc_with(&self, x: &BitString, _r: Option<&BitString>) -> Result<Ciphertext> {
        Ok(Ciphertext::new("otp", self.key.xor(x)?, None))
    }
    fn dec(&self, c: &Ciphertext) -> Result<BitString> {
        c.expect_scheme("otp")?;
        self.key.xor(&c.payload)
    }
    fn core_bits(&self) -> Option<usize> {
        Some(self.key.len())
    }
    fn core_eval(&self, x: &BitString, _r: Option<&BitString>) -> Result<BitString> {
        self.key.xor(x)
    }
    fn core_invert(&self, y: &BitString, _r: Option<&BitString>) -> Result<BitString> {
        self.key.xor(y)
    }
    fn type2_permutation(&self, _r: Option<&BitString>) -> Result<Permutation> {
        xor_table(self.key.len(), self.key.to_u64()?)
    }
}

/// `(y, r)` with `y = x ⊕ F_k(r)`.
#[derive(Debug, Clone)]
pub struct Goldreich {
    pub m: usize,
    pub r_bits: usize,
    pub key_bits: usize,
    pub backend: PrfBackend,
}

impl Goldreich {
    /// Message, randomness and key all `n` bits, ideal PRF.
    pub fn new(n: usize) -> Self {
        Self {
            m: n,
            r_bits: n,
            key_bits: n,
            backend: PrfBackend::Ideal,
        }
    }
}

pub(crate) struct KeyedGoldreich {
    m: usize,
    prf: Prf,
}

impl KeyedGoldreich {
    pub(crate) fn pad(&self, r: &BitString) -> Result<BitString> {
        self.prf.eval(r)
    }
}

impl Skes for Goldreich {
    fn name(&self) -> &'static str {
        "goldreich"
    }
    fn key_bits(&self) -> usize {
        self.key_bits
    }
    fn msg_bits(&self) -> usize {
        self.m
    }
    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkes>> {
        Ok(Box::new(self.load_concrete(key)?))
    }
}

impl Goldreich {
    pub(crate) fn load_concrete(&self, key: &SecretKey) -> Result<KeyedGoldreich> {
        check_width(key.bits(), self.key_bits)?;
        Ok(KeyedGoldreich {
            m: self.m,
            prf: Prf::new(self.backend, key, self.r_bits, self.m)?,
        })
    }
}

impl KeyedSkes for KeyedGoldreich {
    fn msg_bits(&self) -> usize {
        self.m
    }
    fn rand_bits(&self) -> usize {
        self.prf.in_bits()
    }
    fn enc_with(&self, x: &BitString, r: Option<&BitString>) -> Result<Ciphertext> {
        check_width(x, self.m)?;
        let r = require_r(r, self.rand_bits())?;
        Ok(Ciphertext::new("goldreich", x.xor(&self.pad(r)?)?, Some(r.clone())))
    }
    fn dec(&self, c: &Ciphertext) -> Result<BitString> {
        c.expect_scheme("goldreich")?;
        let r = c.r.as_ref().ok_or_else(|| Error::Decryption("missing r".into()))?;
        check_width(r, self.rand_bits()).map_err(|e| Error::Decryption(e.to_string()))?;
        check_width(&c.payload, self.m).map_err(|e| Error::Decryption(e.to_string()))?;
        c.payload.xor(&self.pad(r)?)
    }
    fn core_bits(&self) -> Option<usize> {
        Some(self.m)
    }
    fn core_eval(&self, x: &BitString, r: Option<&BitString>) -> Result<BitString> {
        x.xor(&self.pad(require_r(r, self.rand_bits())?)?)
    }
    fn core_invert(&self, y: &BitString, r: Option<&BitString>) -> Result<BitString> {
        y.xor(&self.pad(require_r(r, self.rand_bits())?)?)
    }
    fn type2_permutation(&self, r: Option<&BitString>) -> Result<Permutation> {
        let pad = self.pad(require_r(r, self.rand_bits())?)?;
        xor_table(self.m, pad.to_u64()?)
    }
}

/// `y = P_k(x ∥ r)` for an ideal permutation on `m + r_bits` bits.
#[derive(Debug, Clone)]
pub struct PrpScheme {
    pub m: usize,
    pub r_bits: usize,
    pub key_bits: usize,
}

impl PrpScheme {
    pub fn new(m: usize, r_bits: usize) -> Self {
        Self { m, r_bits, key_bits: 32 }
    }
}

pub(crate) struct KeyedPrp {
    m: usize,
    r_bits: usize,
    perm: Permutation,
}

impl PrpScheme {
    pub(crate) fn load_concrete(&self, key: &SecretKey) -> Result<KeyedPrp> {
        check_width(key.bits(), self.key_bits)?;
        if self.m == 0 || self.r_bits == 0 {
            return Err(Error::Param("PRP scheme needs m, r ≥ 1".into()));
        }
        Ok(KeyedPrp {
            m: self.m,
            r_bits: self.r_bits,
            perm: sample_ideal_qprp(key, self.m + self.r_bits)?,
        })
    }
}

impl Skes for PrpScheme {
    fn name(&self) -> &'static str {
        "prp"
    }
    fn key_bits(&self) -> usize {
        self.key_bits
    }
    fn msg_bits(&self) -> usize {
        self.m
    }
    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkes>> {
        Ok(Box::new(self.load_concrete(key)?))
    }
}

impl KeyedSkes for KeyedPrp {
    fn msg_bits(&self) -> usize {
        self.m
    }
    fn rand_bits(&self) -> usize {
        self.r_bits
    }
    fn enc_with(&self, x: &BitString, r: Option<&BitString>) -> Result<Ciphertext> {
        Ok(Ciphertext::new("prp", self.core_eval(x, r)?, None))
    }
    fn dec(&self, c: &Ciphertext) -> Result<BitString> {
        c.expect_scheme("prp")?;
        check_width(&c.payload, self.m + self.r_bits).map_err(|e| Error::Decryption(e.to_string()))?;
        let z = self.perm.apply_inverse(c.payload.to_u64()? as usize) as u64;
        BitString::from_u64(z >> self.r_bits, self.m)
    }
    fn core_bits(&self) -> Option<usize> {
        Some(self.m + self.r_bits)
    }
    fn core_eval(&self, x: &BitString, r: Option<&BitString>) -> Result<BitString> {
        check_width(x, self.m)?;
        let r = require_r(r, self.r_bits)?;
        let y = self.perm.apply(x.concat(r).to_u64()? as usize);
        BitString::from_u64(y as u64, self.m + self.r_bits)
    }
    fn core_invert(&self, y: &BitString, _r: Option<&BitString>) -> Result<BitString> {
        self.dec(&Ciphertext::new("prp", y.clone(), None))
    }
    /// `|x, y⟩ ↦ |P(x ∥ (y ⊕ r))⟩`.
    fn type2_permutation(&self, r: Option<&BitString>) -> Result<Permutation> {
        let r = require_r(r, self.r_bits)?.to_u64()? as usize;
        let d = self.m + self.r_bits;
        Ok(Permutation::from_forward(
            d,
            (0..1usize << d).map(|z| self.perm.apply(z ^ r)).collect(),
        )?)
    }
}

/// Blockwise PRP encryption of `blocks · m` bits with fresh `r` per block.
#[derive(Debug, Clone)]
pub struct PrpMode {
    pub inner: PrpScheme,
    pub blocks: usize,
}

struct KeyedPrpMode {
    inner: KeyedPrp,
    blocks: usize,
}

impl Skes for PrpMode {
    fn name(&self) -> &'static str {
        "prp-mode"
    }
    fn key_bits(&self) -> usize {
        self.inner.key_bits
    }
    fn msg_bits(&self) -> usize {
        self.inner.m * self.blocks
    }
    fn load(&self, key: &SecretKey) -> Result<Box<dyn KeyedSkes>> {
        if self.blocks == 0 {
            return Err(Error::Param("mode needs at least one block".into()));
        }
        Ok(Box::new(KeyedPrpMode {
            inner: self.inner.load_concrete(key)?,
            blocks: self.blocks,
        }))
    }
}

impl KeyedSkes for KeyedPrpMode {
    fn msg_bits(&self) -> usize {
        self.inner.m * self.blocks
    }
    fn rand_bits(&self) -> usize {
        self.inner.r_bits * self.blocks
    }
    fn enc_with(&self, x: &BitString, r: Option<&BitString>) -> Result<Ciphertext> {
        check_width(x, self.msg_bits())?;
        let r = require_r(r, self.rand_bits())?;
        let (m, rb) = (self.inner.m, self.inner.r_bits);
        let mut payload: Option<BitString> = None;
        for i in 0..self.blocks {
            let block = self
                .inner
                .core_eval(&x.slice(i * m, (i + 1) * m)?, Some(&r.slice(i * rb, (i + 1) * rb)?))?;
            payload = Some(match payload {
                None => block,
                Some(p) => p.concat(&block),
            });
        }
        Ok(Ciphertext::new("prp-mode", payload.expect("blocks ≥ 1"), None))
    }
    fn dec(&self, c: &Ciphertext) -> Result<BitString> {
        c.expect_scheme("prp-mode")?;
        let w = self.inner.m + self.inner.r_bits;
        check_width(&c.payload, w * self.blocks).map_err(|e| Error::Decryption(e.to_string()))?;
        let mut out: Option<BitString> = None;
        for i in 0..self.blocks {
            let block = self.inner.dec(&Ciphertext::new("prp", c.payload.slice(i * w, (i + 1) * w)?, None))?;
            out = Some(match out {
                None => block,
                Some(o) => o.concat(&block),
            });
        }
        Ok(out.expect("blocks ≥ 1"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    #[test]
    fn otp_examples() {
        let k = SecretKey::new(BitString::parse_binary("1010").unwrap());
        let x = BitString::parse_binary("0110").unwrap();
        assert_eq!(otp_enc(&k, &x).unwrap().to_string(), "1100");
        assert_eq!(otp_enc(&k, k.bits()).unwrap(), BitString::zeros(4));
        let z = SecretKey::new(BitString::zeros(4));
        assert_eq!(otp_enc(&z, &x).unwrap(), x);
        assert!(otp_enc(&k, &BitString::zeros(3)).is_err());
    }

    #[test]
    fn goldreich_pinned_pad_and_flip() {
        let mut rng = rng();
        let s = Goldreich::new(6);
        let key = s.keygen(&mut rng);
        let kd = s.load(&key).unwrap();
        let x = BitString::from_u64(0b101100, 6).unwrap();
        let r = BitString::from_u64(17, 6).unwrap();
        let c = kd.enc_with(&x, Some(&r)).unwrap();
        let pad = Prf::new(PrfBackend::Ideal, &key, 6, 6).unwrap().eval(&r).unwrap();
        assert_eq!(c.payload.xor(&x).unwrap(), pad);
        let mut flipped = c.clone();
        flipped.payload = c.payload.xor(&BitString::ones(6)).unwrap();
        assert_eq!(kd.dec(&flipped).unwrap(), x.xor(&BitString::ones(6)).unwrap());
    }

    #[test]
    fn prp_identity_layout_and_roundtrip() {
        let mut rng = rng();
        let s = PrpScheme::new(3, 3);
        for _ in 0..5 {
            let kd = s.load(&s.keygen(&mut rng)).unwrap();
            for x in 0..8 {
                let x = BitString::from_u64(x, 3).unwrap();
                for r in 0..8 {
                    let r = BitString::from_u64(r, 3).unwrap();
                    assert_eq!(kd.dec(&kd.enc_with(&x, Some(&r)).unwrap()).unwrap(), x);
                }
            }
        }
        let id = KeyedPrp {
            m: 3,
            r_bits: 3,
            perm: Permutation::identity(6),
        };
        let x = BitString::parse_binary("101").unwrap();
        let c = id.enc_with(&x, Some(&BitString::zeros(3))).unwrap();
        assert_eq!(c.payload, x.concat(&BitString::zeros(3)));
    }

    #[test]
    fn prp_type2_embeds_encryption() {
        let mut rng = rng();
        let s = PrpScheme::new(2, 2);
        let kd = s.load(&s.keygen(&mut rng)).unwrap();
        let r = BitString::from_u64(2, 2).unwrap();
        let p = kd.type2_permutation(Some(&r)).unwrap();
        for x in 0..4u64 {
            let c = kd.enc_with(&BitString::from_u64(x, 2).unwrap(), Some(&r)).unwrap();
            assert_eq!(p.apply((x << 2) as usize) as u64, c.payload.to_u64().unwrap());
        }
    }

    #[test]
    fn mode_reassembles() {
        let mut rng = rng();
        let s = PrpMode {
            inner: PrpScheme::new(2, 3),
            blocks: 3,
        };
        let kd = s.load(&s.keygen(&mut rng)).unwrap();
        for _ in 0..20 {
            let x = BitString::random(6, &mut rng);
            let c = kd.enc(&x, &mut rng).unwrap();
            assert_eq!(c.payload.len(), 15);
            assert_eq!(kd.dec(&c).unwrap(), x);
        }
    }

    #[test]
    fn ciphertext_json_is_tagged() {
        let c = Ciphertext::new("otp", BitString::parse_binary("1100").unwrap(), None);
        assert_eq!(c.to_json(), r#"{"scheme":"otp","payload":{"len":4,"hex":"c"}}"#);
    }
}
