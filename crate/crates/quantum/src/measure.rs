//! Computational-basis measurement of a subset of qubits.

use crate::index::Layout;
use crate::{DensityMatrix, Error, Result, StateVector, C64};

/// Source of the measurement coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureRandomness {
    /// A uniform draw in `[0, 1)`, mapped through the outcome CDF.
    Uniform(f64),
    /// Pin the outcome; fails if it has zero probability.
    Forced(usize),
}

impl MeasureRandomness {
    pub fn draw<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        MeasureRandomness::Uniform(rng.gen())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    /// Outcome bits, MSB = first target.
    pub outcome: usize,
    pub probability: f64,
}

const ZERO_PROBABILITY: f64 = 1e-14;

fn pick(probs: &[f64], randomness: MeasureRandomness) -> Result<usize> {
    match randomness {
        MeasureRandomness::Forced(o) => {
            if o >= probs.len() || probs[o] <= ZERO_PROBABILITY {
                return Err(Error::ZeroProbability(o));
            }
            Ok(o)
        }
        MeasureRandomness::Uniform(u) => {
            let total: f64 = probs.iter().sum();
            let target = u * total;
            let mut acc = 0.0;
            let mut last = 0;
            for (o, &p) in probs.iter().enumerate() {
                if p <= ZERO_PROBABILITY {
                    continue;
                }
                acc += p;
                last = o;
                if target < acc {
                    return Ok(o);
                }
            }
            Ok(last)
        }
    }
}

/// Outcome distribution of measuring `targets` on a pure state.
pub fn outcome_probabilities(state: &StateVector, targets: &[usize]) -> Result<Vec<f64>> {
    let layout = Layout::new(targets, state.n_qubits())?;
    let mut probs = vec![0.0; layout.local_dim()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[layout.gather(i)] += a.norm_sqr();
    }
    Ok(probs)
}

/// Measures `targets` and returns the outcome with the collapsed, renormalized state.
pub fn measure_computational(
    state: &StateVector,
    targets: &[usize],
    randomness: MeasureRandomness,
) -> Result<(Measurement, StateVector)> {
    let layout = Layout::new(targets, state.n_qubits())?;
    let probs = outcome_probabilities(state, targets)?;
    let outcome = pick(&probs, randomness)?;
    let p = probs[outcome];
    let scale = 1.0 / p.sqrt();
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if layout.gather(i) == outcome {
                a * scale
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok((
        Measurement {
            outcome,
            probability: p,
        },
        StateVector::from_raw(state.n_qubits(), amps),
    ))
}

/// Density-matrix analogue of [`measure_computational`].
pub fn measure_density(
    rho: &DensityMatrix,
    targets: &[usize],
    randomness: MeasureRandomness,
) -> Result<(Measurement, DensityMatrix)> {
    let layout = Layout::new(targets, rho.n_qubits())?;
    let mut probs = vec![0.0; layout.local_dim()];
    for (i, d) in rho.diagonal().into_iter().enumerate() {
        probs[layout.gather(i)] += d.max(0.0);
    }
    let outcome = pick(&probs, randomness)?;
    let p = probs[outcome];
    let mut post = rho.clone();
    post.project(targets, outcome)?;
    post.scale(1.0 / p);
    Ok((
        Measurement {
            outcome,
            probability: p,
        },
        post,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Gate;

    #[test]
    fn basis_state_measures_deterministically() {
        let s = StateVector::basis(3, 0b101).unwrap();
        for u in [0.0, 0.5, 0.999] {
            let (m, post) = measure_computational(&s, &[0, 2], MeasureRandomness::Uniform(u)).unwrap();
            assert_eq!(m.outcome, 0b11);
            assert!((m.probability - 1.0).abs() < 1e-15);
            assert_eq!(post, s);
        }
    }

    #[test]
    fn forced_zero_probability_is_an_error() {
        let s = StateVector::basis(1, 0).unwrap();
        assert_eq!(
            measure_computational(&s, &[0], MeasureRandomness::Forced(1)).unwrap_err(),
            Error::ZeroProbability(1)
        );
    }

    #[test]
    fn density_and_pure_measurements_agree() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply(&Gate::H, &[0]).unwrap();
        s.apply(&Gate::Cnot, &[0, 1]).unwrap();
        let (m1, post1) = measure_computational(&s, &[1], MeasureRandomness::Uniform(0.7)).unwrap();
        let (m2, post2) = measure_density(&s.to_density(), &[1], MeasureRandomness::Uniform(0.7)).unwrap();
        assert_eq!(m1.outcome, 1);
        assert_eq!(m1.outcome, m2.outcome);
        assert!(post2.max_entry_diff(&post1.to_density()).unwrap() < 1e-12);
    }
}
