//! Fixed-length bit strings, most significant bit first.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Param("bit strings must be non-empty".into()));
        }
        Ok(Self { bits })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "bit strings must be non-empty");
        Self { bits: vec![false; len] }
    }

    pub fn ones(len: usize) -> Self {
        assert!(len > 0, "bit strings must be non-empty");
        Self { bits: vec![true; len] }
    }

    /// The low `len` bits of `value`, MSB first.
    pub fn from_u64(value: u64, len: usize) -> Result<Self> {
        if len == 0 || (len < 64 && value >> len != 0) {
            return Err(Error::Domain(format!("{value} does not fit in {len} bits")));
        }
        Ok(Self {
            bits: (0..len)
                .map(|i| {
                    let shift = len - 1 - i;
                    shift < 64 && (value >> shift) & 1 == 1
                })
                .collect(),
        })
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse_binary(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Param(format!("invalid binary digit {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Self::new(bits)
    }

    pub fn random<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        assert!(len > 0, "bit strings must be non-empty");
        Self {
            bits: (0..len).map(|_| rng.gen()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn to_u64(&self) -> Result<u64> {
        if self.len() > 64 {
            return Err(Error::Width {
                expected: 64,
                got: self.len(),
            });
        }
        Ok(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len() != other.len() {
            return Err(Error::Width {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Self {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    /// Bits `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Result<BitString> {
        if start >= end || end > self.len() {
            return Err(Error::Param(format!("bad slice {start}..{end} of {} bits", self.len())));
        }
        Ok(Self {
            bits: self.bits[start..end].to_vec(),
        })
    }

    /// Splits after `at` bits.
    pub fn split(&self, at: usize) -> Result<(BitString, BitString)> {
        Ok((self.slice(0, at)?, self.slice(at, self.len())?))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// `⟨self, other⟩ mod 2`.
    pub fn inner_mod2(&self, other: &BitString) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::Width {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .fold(false, |acc, (a, b)| acc ^ (a & b)))
    }

    /// Lowercase hex, MSB first, left-padded to a whole number of nibbles.
    pub fn to_hex(&self) -> String {
        let pad = (4 - self.len() % 4) % 4;
        let padded: Vec<bool> = std::iter::repeat_n(false, pad).chain(self.bits.iter().copied()).collect();
        padded
            .chunks(4)
            .map(|c| {
                let v = c.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
                char::from_digit(v as u32, 16).expect("nibble")
            })
            .collect()
    }

    /// Inverse of [`BitString::to_hex`] for a known bit length.
    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        let mut bits = Vec::with_capacity(hex.len() * 4);
        for c in hex.chars() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Param(format!("invalid hex digit {c:?}")))?;
            for i in (0..4).rev() {
                bits.push((v >> i) & 1 == 1);
            }
        }
        if bits.len() < len || bits.len() >= len + 4 {
            return Err(Error::Width {
                expected: len,
                got: bits.len(),
            });
        }
        let extra = bits.len() - len;
        if bits[..extra].iter().any(|&b| b) {
            return Err(Error::Domain(format!("hex {hex} exceeds {len} bits")));
        }
        Self::new(bits[extra..].to_vec())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({})", self)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HexRepr {
    len: usize,
    hex: String,
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HexRepr {
            len: self.len(),
            hex: self.to_hex(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = HexRepr::deserialize(d)?;
        BitString::from_hex(&repr.hex, repr.len).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_example_and_mismatch() {
        let k = BitString::parse_binary("1010").unwrap();
        let x = BitString::parse_binary("0110").unwrap();
        assert_eq!(k.xor(&x).unwrap().to_string(), "1100");
        assert!(matches!(k.xor(&BitString::zeros(3)), Err(Error::Width { .. })));
    }

    #[test]
    fn hex_is_msb_first() {
        let b = BitString::parse_binary("100101").unwrap();
        assert_eq!(b.to_hex(), "25");
        assert_eq!(BitString::from_hex("25", 6).unwrap(), b);
        assert!(BitString::from_hex("45", 6).is_err());
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(json, r#"{"len":6,"hex":"25"}"#);
        assert_eq!(serde_json::from_str::<BitString>(&json).unwrap(), b);
    }

    #[test]
    fn u64_roundtrip() {
        let b = BitString::from_u64(5, 4).unwrap();
        assert_eq!(b.to_string(), "0101");
        assert_eq!(b.to_u64().unwrap(), 5);
        assert!(BitString::from_u64(16, 4).is_err());
        assert!(BitString::new(vec![]).is_err());
    }
}
