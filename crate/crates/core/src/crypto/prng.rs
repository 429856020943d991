//! Pseudorandom generators: Blum-Micali, Goldreich-Levin and a counter-mode PRF stream.

use serde::{Deserialize, Serialize};

use super::arith::{is_prime, is_primitive_root, mod_pow};
use super::owtp::RsaIndex;
use super::prf::ideal_bits;
use crate::{BitString, Error, Result};
use qsim::Permutation;

/// Generator state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrngState {
    BlumMicali { p: u64, g: u64, s: u64, emitted: u64 },
    CounterPrf { key: u64, counter: u64, emitted: u64 },
}

/// Blum-Micali hard-core predicate: 1 iff `s < (p − 1)/2`.
pub fn bm_predicate(s: u64, p: u64) -> bool {
    s < (p - 1) / 2
}

/// Checks `p` prime and `g` a generator of `Z_p^*`.
pub fn check_bm_params(p: u64, g: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Param(format!("{p} is not prime")));
    }
    if g <= 1 || !is_primitive_root(g, p) {
        return Err(Error::Param(format!("{g} does not generate Z_{p}^*")));
    }
    Ok(())
}

impl PrngState {
    pub fn blum_micali(p: u64, g: u64, s: u64) -> Result<Self> {
        check_bm_params(p, g)?;
        if s == 0 || s >= p {
            return Err(Error::Param(format!("seed {s} outside 1..{p}")));
        }
        Ok(PrngState::BlumMicali { p, g, s, emitted: 0 })
    }

    /// Blum-Micali with a seed drawn uniformly from `1..p`.
    pub fn blum_micali_random<R: rand::Rng + ?Sized>(p: u64, g: u64, rng: &mut R) -> Result<Self> {
        Self::blum_micali(p, g, rng.gen_range(1..p))
    }

    pub fn counter_prf(key: u64) -> Self {
        PrngState::CounterPrf {
            key,
            counter: 0,
            emitted: 0,
        }
    }

    pub fn emitted(&self) -> u64 {
        match self {
            PrngState::BlumMicali { emitted, .. } | PrngState::CounterPrf { emitted, .. } => *emitted,
        }
    }

    /// Next `n ≤ 64` output bits as an integer, first bit most significant.
    pub fn next_bits(&mut self, n: usize) -> u64 {
        assert!(n <= 64);
        match self {
            PrngState::BlumMicali { .. } => {
                let mut out = 0u64;
                for _ in 0..n {
                    let (bit, next) = blum_micali_next(self).expect("state validated at construction");
                    *self = next;
                    out = (out << 1) | bit as u64;
                }
                out
            }
            PrngState::CounterPrf { key, counter, emitted } => {
                let v = ideal_bits(&[*key, 0x5052_4e47, *counter], n);
                *counter += 1;
                *emitted += n as u64;
                v
            }
        }
    }
}

/// One Blum-Micali step: `s' = g^s mod p`, output the predicate of `s'`.
pub fn blum_micali_next(state: &PrngState) -> Result<(bool, PrngState)> {
    match *state {
        PrngState::BlumMicali { p, g, s, emitted } => {
            if g <= 1 || s == 0 || s >= p {
                return Err(Error::Param("invalid Blum-Micali state".into()));
            }
            let next = mod_pow(g, s, p);
            Ok((
                bm_predicate(next, p),
                PrngState::BlumMicali {
                    p,
                    g,
                    s: next,
                    emitted: emitted + 1,
                },
            ))
        }
        PrngState::CounterPrf { .. } => Err(Error::Param("not a Blum-Micali state".into())),
    }
}

/// A one-way permutation together with its Goldreich-Levin string `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OwpHandle {
    width: usize,
    kind: OwpKind,
    z: BitString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OwpKind {
    Identity,
    /// `x ↦ g^x mod p` on `1..p`, with `p − 1 ↦ 1`.
    ModExp { p: u64, g: u64 },
    Rsa(RsaIndex),
    Table(Permutation),
}

impl OwpHandle {
    pub fn new(width: usize, kind: OwpKind, z: BitString) -> Result<Self> {
        if z.len() != width {
            return Err(Error::Width {
                expected: width,
                got: z.len(),
            });
        }
        match &kind {
            OwpKind::ModExp { p, g } => check_bm_params(*p, *g)?,
            OwpKind::Table(t) if t.domain_bits() != width => {
                return Err(Error::Width {
                    expected: width,
                    got: t.domain_bits(),
                })
            }
            _ => {}
        }
        Ok(Self { width, kind, z })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn z(&self) -> &BitString {
        &self.z
    }

    pub fn apply(&self, x: u64) -> Result<u64> {
        match &self.kind {
            OwpKind::Identity => Ok(x),
            OwpKind::ModExp { p, g } => {
                if x == 0 || x >= *p {
                    return Err(Error::Domain(format!("{x} outside 1..{p}")));
                }
                Ok(mod_pow(*g, x, *p))
            }
            OwpKind::Rsa(index) => index.eval(x),
            OwpKind::Table(t) => {
                if x as usize >= t.size() {
                    return Err(Error::Domain(format!("{x} outside table")));
                }
                Ok(t.apply(x as usize) as u64)
            }
        }
    }

    /// `⟨x, z⟩ mod 2`.
    pub fn hardcore(&self, x: u64) -> Result<bool> {
        self.z.inner_mod2(&BitString::from_u64(x, self.width)?)
    }
}

/// Bit `j` (1-based) of the output is the hard-core bit of `f^j(seed)`.
pub fn goldreich_levin_stream(seed: &BitString, owp: &OwpHandle, n_out: usize) -> Result<BitString> {
    if seed.len() != owp.width() {
        return Err(Error::Width {
            expected: owp.width(),
            got: seed.len(),
        });
    }
    let mut x = seed.to_u64()?;
    let mut bits = Vec::with_capacity(n_out);
    for _ in 0..n_out {
        x = owp.apply(x)?;
        bits.push(owp.hardcore(x)?);
    }
    BitString::new(bits)
}

/// `n`-bit output for an `n`-bit seed.
pub fn goldreich_levin_prng(seed: &BitString, owp: &OwpHandle) -> Result<BitString> {
    goldreich_levin_stream(seed, owp, owp.width())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blum_micali_examples() {
        let s = PrngState::blum_micali(23, 5, 3).unwrap();
        let (bit, s1) = blum_micali_next(&s).unwrap();
        assert!(matches!(s1, PrngState::BlumMicali { s: 10, .. }));
        assert!(bit, "10 < 11");
        let (bit, s2) = blum_micali_next(&s1).unwrap();
        assert!(matches!(s2, PrngState::BlumMicali { s: 9, emitted: 2, .. }));
        assert!(bit);
    }

    #[test]
    fn degenerate_parameters_rejected() {
        assert!(PrngState::blum_micali(23, 1, 1).is_err());
        assert!(PrngState::blum_micali(21, 2, 1).is_err());
        assert!(PrngState::blum_micali(23, 2, 1).is_err(), "2 has order 11");
        assert!(PrngState::blum_micali(23, 5, 0).is_err());
    }

    #[test]
    fn gl_identity_fixed_point() {
        let n = 6;
        let mut z = vec![false; n];
        z[0] = true;
        let owp = OwpHandle::new(n, OwpKind::Identity, BitString::new(z).unwrap()).unwrap();
        assert_eq!(goldreich_levin_prng(&BitString::ones(n), &owp).unwrap(), BitString::ones(n));
        assert!(goldreich_levin_prng(&BitString::ones(n + 1), &owp).is_err());
    }

    #[test]
    fn counter_stream_is_deterministic() {
        let mut a = PrngState::counter_prf(9);
        let mut b = PrngState::counter_prf(9);
        let xs: Vec<u64> = (0..5).map(|_| a.next_bits(7)).collect();
        let ys: Vec<u64> = (0..5).map(|_| b.next_bits(7)).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().all(|&v| v < 128));
        assert_eq!(a.emitted(), 35);
    }
}
