//! Superposition attacks on in-place encryption.

use qsim::{measure_computational, measure_density, DensityMatrix, Gate, MeasureRandomness, StateVector};
use rand::Rng as _;

use crate::crypto::skes::KeyedSkes;
use crate::games::{QChallenge, QEncOracle, QcpaAdversary, QcpaOracles, QindAdversary};
use crate::qoram::QCiphertext;
use crate::rng::Rng;
use crate::{BitString, Error, Result};

fn hadamard_all(n: usize) -> Result<StateVector> {
    let mut s = StateVector::zero(n)?;
    for q in 0..n {
        s.apply(&Gate::H, &[q])?;
    }
    Ok(s)
}

/// Challenges with `H|0^m⟩` and `H|1^m⟩`, undoes the Hadamards on the
/// ciphertext register and guesses 0 iff every qubit reads 0.
#[derive(Debug, Clone, Copy)]
pub struct HadamardDistinguisher {
    pub m: usize,
}

pub fn hadamard_distinguisher(m: usize) -> HadamardDistinguisher {
    HadamardDistinguisher { m }
}

impl QindAdversary for HadamardDistinguisher {
    fn challenge(&self, msg_qubits: usize, _oracle: &mut QEncOracle, _rng: &mut Rng) -> Result<QChallenge> {
        if msg_qubits != self.m {
            return Err(Error::Width {
                expected: self.m,
                got: msg_qubits,
            });
        }
        let phi0 = hadamard_all(self.m)?;
        let mut phi1 = StateVector::basis(self.m, (1 << self.m) - 1)?;
        for q in 0..self.m {
            phi1.apply(&Gate::H, &[q])?;
        }
        Ok(QChallenge::Product {
            phi0: phi0.to_density(),
            phi1: phi1.to_density(),
        })
    }

    fn distinguish(&self, _chosen: &QChallenge, ct: &QCiphertext, _oracle: &mut QEncOracle, rng: &mut Rng) -> Result<bool> {
        let mut state: DensityMatrix = ct.state.clone();
        let reg: Vec<usize> = (0..state.n_qubits()).collect();
        for &q in &reg {
            state.apply(&Gate::H, &[q])?;
        }
        let (meas, _) = measure_density(&state, &reg, MeasureRandomness::draw(rng))?;
        Ok(meas.outcome != 0)
    }
}

/// Result of splitting a scheme into randomness and core function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreSplit {
    pub msg_bits: usize,
    pub rand_bits: usize,
    pub core_bits: usize,
    /// `|f(k, r, x)| = |x|`.
    pub quasi_length_preserving: bool,
}

/// Largest randomness width checked exhaustively; wider ones are checked on a prefix.
const CORE_CHECK_R_BITS: usize = 10;

/// Reads the declared core function and verifies `g(k, r, f(k, r, x)) = x`
/// and the output width for every `x` and (up to a cap) every `r`.
pub fn core_function_split(keyed: &dyn KeyedSkes) -> Result<CoreSplit> {
    let core = keyed
        .core_bits()
        .ok_or_else(|| Error::Precondition("scheme declares no core function".into()))?;
    let (m, rb) = (keyed.msg_bits(), keyed.rand_bits());
    let rs: Vec<Option<BitString>> = if rb == 0 {
        vec![None]
    } else {
        (0..1u64 << rb.min(CORE_CHECK_R_BITS))
            .map(|v| BitString::from_u64(v, rb).map(Some))
            .collect::<Result<_>>()?
    };
    for r in &rs {
        for v in 0..1u64 << m {
            let x = BitString::from_u64(v, m)?;
            let y = keyed.core_eval(&x, r.as_ref())?;
            if y.len() != core {
                return Err(Error::Soundness(format!("core output has {} bits, declared {core}", y.len())));
            }
            if keyed.core_invert(&y, r.as_ref())? != x {
                return Err(Error::Soundness(format!("core inverse fails at x = {x}")));
            }
        }
    }
    Ok(CoreSplit {
        msg_bits: m,
        rand_bits: rb,
        core_bits: core,
        quasi_length_preserving: core == m,
    })
}

/// IND-qCPA adversary: one uniform-superposition query, measured, then a guess
/// that uses the sample only on an exact randomness collision.
#[derive(Debug, Clone, Copy, Default)]
pub struct HadamardQuery;

impl QcpaAdversary for HadamardQuery {
    fn play(&self, o: &mut dyn QcpaOracles, rng: &mut Rng) -> Result<bool> {
        let (m, c) = (o.msg_bits(), o.ct_bits());
        let mut state = hadamard_all(m)?.tensor(&StateVector::zero(c)?)?;
        let x_reg: Vec<usize> = (0..m).collect();
        let y_reg: Vec<usize> = (m..m + c).collect();
        o.enc_quantum(&mut state, &x_reg, &y_reg)?;
        let all: Vec<usize> = (0..m + c).collect();
        let (meas, _) = measure_computational(&state, &all, MeasureRandomness::draw(rng))?;
        let x = BitString::from_u64((meas.outcome >> c) as u64, m)?;
        let sample = o.parse_ciphertext(&BitString::from_u64((meas.outcome & ((1 << c) - 1)) as u64, c)?)?;
        let other = x.xor(&BitString::ones(m))?;
        let ch = o.challenge(&x, &other)?;
        if sample.r.is_some() && sample.r == ch.r {
            return Ok(sample.payload != ch.payload);
        }
        Ok(rng.gen())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::skes::{Goldreich, Otp, PrpScheme};
    use crate::crypto::{SecretKey, Skes};

    #[test]
    fn core_splits() {
        let key = |n| SecretKey::new(BitString::zeros(n));
        let g = Goldreich::new(3);
        let split = core_function_split(g.load(&key(3)).unwrap().as_ref()).unwrap();
        assert!(split.quasi_length_preserving);
        let otp = core_function_split(Otp { n: 4 }.load(&key(4)).unwrap().as_ref()).unwrap();
        assert_eq!((otp.rand_bits, otp.quasi_length_preserving), (0, true));
        let p = PrpScheme::new(2, 3);
        let split = core_function_split(p.load(&key(p.key_bits())).unwrap().as_ref()).unwrap();
        assert_eq!((split.core_bits, split.quasi_length_preserving), (5, false));
    }
}
