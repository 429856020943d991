//! Quantum one-time pad: per-qubit `X^a Z^b` keyed by two classical bits.

use nalgebra::DMatrix;

use crate::index::validate_targets;
use crate::{DensityMatrix, Error, Gate, Result, StateVector, C64};

fn check_key(key: &[bool], targets: &[usize], n_qubits: usize) -> Result<()> {
    validate_targets(targets, n_qubits)?;
    if key.len() != 2 * targets.len() {
        return Err(Error::KeyLength {
            expected: 2 * targets.len(),
            got: key.len(),
        });
    }
    Ok(())
}

/// Applies the pad to every qubit. Key bits `(2j, 2j+1)` are the `X` and `Z`
/// exponents for qubit `j`.
pub fn qotp_apply(key: &[bool], rho: &DensityMatrix) -> Result<DensityMatrix> {
    let targets: Vec<usize> = (0..rho.n_qubits()).collect();
    qotp_apply_on(key, rho, &targets)
}

/// Applies the pad to `targets` only.
pub fn qotp_apply_on(key: &[bool], rho: &DensityMatrix, targets: &[usize]) -> Result<DensityMatrix> {
    check_key(key, targets, rho.n_qubits())?;
    let mut out = rho.clone();
    for (j, &q) in targets.iter().enumerate() {
        if key[2 * j + 1] {
            out.apply(&Gate::Z, &[q])?;
        }
        if key[2 * j] {
            out.apply(&Gate::X, &[q])?;
        }
    }
    Ok(out)
}

/// Pure-state version of [`qotp_apply_on`].
pub fn qotp_apply_state(key: &[bool], state: &StateVector, targets: &[usize]) -> Result<StateVector> {
    check_key(key, targets, state.n_qubits())?;
    let mut out = state.clone();
    for (j, &q) in targets.iter().enumerate() {
        if key[2 * j + 1] {
            out.apply(&Gate::Z, &[q])?;
        }
        if key[2 * j] {
            out.apply(&Gate::X, &[q])?;
        }
    }
    Ok(out)
}

/// Exact average of the pad on `targets` over all `4^|targets|` keys.
pub fn qotp_average(rho: &DensityMatrix, targets: &[usize]) -> Result<DensityMatrix> {
    validate_targets(targets, rho.n_qubits())?;
    let n_keys = 1usize << (2 * targets.len());
    let dim = rho.dim();
    let mut acc = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    for k in 0..n_keys {
        let key: Vec<bool> = (0..2 * targets.len())
            .map(|i| (k >> (2 * targets.len() - 1 - i)) & 1 == 1)
            .collect();
        acc += qotp_apply_on(&key, rho, targets)?.matrix();
    }
    acc *= C64::new(1.0 / n_keys as f64, 0.0);
    Ok(DensityMatrix::from_matrix_unchecked(acc))
}
