//! qIND and qIND-qCPA: quantum challenge plaintexts.

use super::challenge_bit;
use crate::qoram::{KeyedSkqes, QCiphertext, Skqes};
use crate::rng::{rng_for, stream, Rng};
use crate::{BitString, Error, Result};
use qsim::{build_from_description, partial_trace, CircuitDescription, DensityMatrix};

/// The adversary's challenge plaintexts.
#[derive(Debug, Clone)]
pub enum QChallenge {
    Product { phi0: DensityMatrix, phi1: DensityMatrix },
    /// Registers `env ∥ m0 ∥ m1`; the unchosen arm is traced out.
    Joint { state: DensityMatrix, env_qubits: usize },
    /// Circuits preparing each arm from `|0…0⟩`.
    Descriptions { d0: CircuitDescription, d1: CircuitDescription },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QindGrant {
    Plain,
    /// Encryption oracle on quantum plaintexts in both stages.
    Qcpa,
}

pub struct QEncOracle {
    keyed: Box<dyn KeyedSkqes>,
    rng: Rng,
    allowed: bool,
}

impl QEncOracle {
    pub fn msg_qubits(&self) -> usize {
        self.keyed.msg_qubits()
    }

    pub fn ct_qubits(&self) -> usize {
        self.keyed.ct_qubits()
    }

    /// Encrypts `targets` of `rho` under fresh randomness.
    pub fn encrypt(&mut self, rho: &DensityMatrix, targets: &[usize]) -> Result<QCiphertext> {
        if !self.allowed {
            return Err(Error::Discipline("no encryption oracle in the qIND game".into()));
        }
        self.fresh(rho, targets)
    }

    fn fresh(&mut self, rho: &DensityMatrix, targets: &[usize]) -> Result<QCiphertext> {
        let bits = self.keyed.rand_bits();
        let r = (bits > 0).then(|| BitString::random(bits, &mut self.rng));
        self.keyed.enc_on(rho, targets, r.as_ref())
    }
}

pub trait QindAdversary: Sync {
    fn challenge(&self, msg_qubits: usize, oracle: &mut QEncOracle, rng: &mut Rng) -> Result<QChallenge>;

    /// `ct` holds the environment (if any) followed by the ciphertext register.
    fn distinguish(&self, chosen: &QChallenge, ct: &QCiphertext, oracle: &mut QEncOracle, rng: &mut Rng) -> Result<bool>;
}

fn resolve(ch: &QChallenge, m: usize, b: bool) -> Result<(DensityMatrix, Vec<usize>)> {
    let check = |rho: &DensityMatrix, expected: usize| {
        if rho.n_qubits() != expected {
            return Err(Error::Width {
                expected,
                got: rho.n_qubits(),
            });
        }
        Ok(())
    };
    match ch {
        QChallenge::Product { phi0, phi1 } => {
            check(phi0, m)?;
            check(phi1, m)?;
            Ok((if b { phi1.clone() } else { phi0.clone() }, (0..m).collect()))
        }
        QChallenge::Joint { state, env_qubits } => {
            let e = *env_qubits;
            check(state, e + 2 * m)?;
            let start = if b { e + m } else { e };
            let keep: Vec<usize> = (0..e).chain(start..start + m).collect();
            Ok((partial_trace(state, &keep)?, (e..e + m).collect()))
        }
        QChallenge::Descriptions { d0, d1 } => {
            let phi0 = build_from_description(d0)?.to_density();
            let phi1 = build_from_description(d1)?.to_density();
            resolve(&QChallenge::Product { phi0, phi1 }, m, b)
        }
    }
}

pub fn game_qind_with_bit(scheme: &dyn Skqes, grant: QindGrant, adversary: &dyn QindAdversary, seed: u64, b: bool) -> Result<bool> {
    let key = scheme.keygen(&mut rng_for(seed, stream::KEY));
    let mut oracle = QEncOracle {
        keyed: scheme.load(&key)?,
        rng: rng_for(seed, stream::CHALLENGER),
        allowed: grant == QindGrant::Qcpa,
    };
    let mut rng = rng_for(seed, stream::ADVERSARY);
    let m = oracle.msg_qubits();
    let chosen = adversary.challenge(m, &mut oracle, &mut rng)?;
    let (rho, targets) = resolve(&chosen, m, b)?;
    let ct = oracle.fresh(&rho, &targets)?;
    Ok(adversary.distinguish(&chosen, &ct, &mut oracle, &mut rng)? == b)
}

pub fn game_qind(scheme: &dyn Skqes, grant: QindGrant, adversary: &dyn QindAdversary, seed: u64) -> Result<bool> {
    game_qind_with_bit(scheme, grant, adversary, seed, challenge_bit(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::skes::Otp;
    use crate::qoram::Type2Lift;
    use qsim::{measure_density, MeasureRandomness, StateVector};
    use std::sync::Arc;

    /// Challenges with |0…0⟩ and |0…0⟩ entangled with an environment qubit.
    struct Entangled;

    impl QindAdversary for Entangled {
        fn challenge(&self, m: usize, oracle: &mut QEncOracle, _rng: &mut Rng) -> Result<QChallenge> {
            assert!(oracle.encrypt(&DensityMatrix::basis(m, 0)?, &(0..m).collect::<Vec<_>>()).is_err());
            let mut s = StateVector::zero(1 + 2 * m)?;
            s.apply(&qsim::Gate::H, &[0])?;
            s.apply(&qsim::Gate::Cnot, &[0, 1])?;
            Ok(QChallenge::Joint {
                state: s.to_density(),
                env_qubits: 1,
            })
        }

        fn distinguish(&self, _c: &QChallenge, ct: &QCiphertext, _o: &mut QEncOracle, rng: &mut Rng) -> Result<bool> {
            assert_eq!(ct.state.n_qubits(), 3);
            let (meas, _) = measure_density(&ct.state, &[0], MeasureRandomness::draw(rng))?;
            Ok(meas.outcome == 1)
        }
    }

    #[test]
    fn joint_challenge_traces_out_the_other_arm() {
        let s = Type2Lift::new(Arc::new(Otp { n: 2 }));
        for seed in 0..10 {
            // The environment qubit is uniform whichever arm is chosen.
            let w0 = game_qind_with_bit(&s, QindGrant::Plain, &Entangled, seed, false).unwrap();
            let w1 = game_qind_with_bit(&s, QindGrant::Plain, &Entangled, seed, true).unwrap();
            assert_ne!(w0, w1);
        }
    }

    #[test]
    fn arm_width_is_checked() {
        let phi = DensityMatrix::basis(1, 0).unwrap();
        let ch = QChallenge::Product {
            phi0: phi.clone(),
            phi1: phi,
        };
        assert!(resolve(&ch, 2, false).is_err());
    }
}
