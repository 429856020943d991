//! Pure states as dense amplitude vectors.

use crate::gates::{apply_matrix, lifted_index_map, Gate};
use crate::index::validate_targets;
use crate::{check_cap, DensityMatrix, Error, Result, C64, NORM_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_cap(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::ValueOutOfRange {
                value: index as u64,
                bits: n_qubits,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps amplitudes after checking the length is `2^n` and the norm is 1.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: dim.next_power_of_two(),
            });
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_cap(n_qubits)?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::from_amplitudes(amps)
    }

    /// Haar-ish random state: i.i.d. Gaussian amplitudes, normalized.
    pub fn random<R: rand::Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_cap(n_qubits)?;
        let amps = (0..1usize << n_qubits)
            .map(|_| C64::new(gaussian(rng), gaussian(rng)))
            .collect();
        Self::normalized(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        check_cap(self.n_qubits + other.n_qubits)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        })
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    pub fn apply(&mut self, gate: &Gate, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(Error::DimensionMismatch {
                left: targets.len(),
                right: gate.arity(),
            });
        }
        validate_targets(targets, self.n_qubits)?;
        match gate {
            Gate::Permutation(p) => {
                let map = lifted_index_map(p.permutation(), targets, self.n_qubits)?;
                self.permute(&map);
                Ok(())
            }
            other => apply_matrix(&mut self.amps, self.n_qubits, targets, &other.matrix()),
        }
    }

    /// Moves the amplitude of basis `x` to basis `map[x]`.
    pub(crate) fn permute(&mut self, map: &[usize]) {
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (x, &y) in map.iter().enumerate() {
            out[y] = self.amps[x];
        }
        self.amps = out;
    }

    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }
}

fn gaussian<R: rand::Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; u1 is kept away from 0.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply(&Gate::H, &[0]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::from_amplitudes(vec![C64::new(h, 0.0), C64::new(h, 0.0)]).unwrap();
        assert!((s.fidelity(&plus).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swap_moves_01_to_10() {
        let mut s = StateVector::basis(2, 0b01).unwrap();
        s.apply(&Gate::Swap, &[0, 1]).unwrap();
        assert_eq!(s, StateVector::basis(2, 0b10).unwrap());
    }

    #[test]
    fn rejects_unnormalized_and_bad_targets() {
        assert!(matches!(
            StateVector::from_amplitudes(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        let mut s = StateVector::zero(2).unwrap();
        assert!(s.apply(&Gate::H, &[2]).is_err());
        assert!(s.apply(&Gate::Cnot, &[1, 1]).is_err());
        assert!(s.apply(&Gate::Cnot, &[1]).is_err());
    }

    #[test]
    fn tensor_orders_leading_register_first() {
        let a = StateVector::basis(1, 1).unwrap();
        let b = StateVector::basis(2, 0b10).unwrap();
        assert_eq!(a.tensor(&b).unwrap(), StateVector::basis(3, 0b110).unwrap());
    }
}
