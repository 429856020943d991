//! Appending `|0^r⟩` and applying a uniformly random permutation, averaged.
//!
//! For an operator `M` on a `D`-dimensional space, the average of `P M P†` over
//! all permutation matrices `P` is `tr(M)/D · I + s/(D(D−1)) · (J − I)` where `s`
//! is the sum of the off-diagonal entries of `M` and `J` is all-ones. The
//! channel applies this blockwise on the environment register.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;

use crate::{check_cap, DensityMatrix, Error, Result, C64};

struct Shape {
    env_dim: usize,
    msg_dim: usize,
    r_dim: usize,
    d: usize,
}

fn shape(rho: &DensityMatrix, env_qubits: usize, r_bits: usize) -> Result<Shape> {
    let n = rho.n_qubits();
    if env_qubits >= n {
        return Err(Error::DimensionMismatch {
            left: env_qubits,
            right: n,
        });
    }
    check_cap(n + r_bits)?;
    let m = n - env_qubits;
    Ok(Shape {
        env_dim: 1 << env_qubits,
        msg_dim: 1 << m,
        r_dim: 1 << r_bits,
        d: 1 << (m + r_bits),
    })
}

/// Closed form of the averaged channel on an `m`-qubit input.
pub fn avg_perm_channel(rho: &DensityMatrix, r_bits: usize) -> Result<DensityMatrix> {
    avg_perm_channel_with_env(rho, 0, r_bits)
}

/// Closed form with the first `env_qubits` qubits untouched.
pub fn avg_perm_channel_with_env(rho: &DensityMatrix, env_qubits: usize, r_bits: usize) -> Result<DensityMatrix> {
    let sh = shape(rho, env_qubits, r_bits)?;
    let d = sh.d;
    let lambda = 1.0 / (d as f64 * (d as f64 - 1.0));
    let total = sh.env_dim * d;
    let mut out = DMatrix::from_element(total, total, C64::new(0.0, 0.0));
    let m = rho.matrix();
    for e in 0..sh.env_dim {
        for f in 0..sh.env_dim {
            let mut tr = C64::new(0.0, 0.0);
            let mut s = C64::new(0.0, 0.0);
            for a in 0..sh.msg_dim {
                for b in 0..sh.msg_dim {
                    let v = m[(e * sh.msg_dim + a, f * sh.msg_dim + b)];
                    if a == b {
                        tr += v;
                    } else {
                        s += v;
                    }
                }
            }
            let diag = tr / d as f64;
            let off = s * lambda;
            for z in 0..d {
                for w in 0..d {
                    out[(e * d + z, f * d + w)] = if z == w { diag } else { off };
                }
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Embeds `ρ` as `ρ ⊗ |0^r⟩⟨0^r|` and conjugates the message part by `perm`.
fn conjugate(rho: &DensityMatrix, sh: &Shape, perm: &[usize], acc: &mut DMatrix<C64>, weight: f64) {
    let m = rho.matrix();
    let idx = |e: usize, a: usize| e * sh.d + perm[a * sh.r_dim];
    for e in 0..sh.env_dim {
        for a in 0..sh.msg_dim {
            let r = idx(e, a);
            for f in 0..sh.env_dim {
                for b in 0..sh.msg_dim {
                    let v = m[(e * sh.msg_dim + a, f * sh.msg_dim + b)];
                    if v.re != 0.0 || v.im != 0.0 {
                        acc[(r, idx(f, b))] += v * weight;
                    }
                }
            }
        }
    }
}

/// Average over every permutation of the `D = 2^{m+r}` basis states.
/// Only feasible for `D ≤ 8`.
pub fn avg_perm_channel_enumerated(rho: &DensityMatrix, env_qubits: usize, r_bits: usize) -> Result<DensityMatrix> {
    let sh = shape(rho, env_qubits, r_bits)?;
    if sh.d > 8 {
        return Err(Error::CapExceeded {
            requested: sh.d.trailing_zeros() as usize,
            cap: 3,
        });
    }
    let total = sh.env_dim * sh.d;
    let mut acc = DMatrix::from_element(total, total, C64::new(0.0, 0.0));
    let mut perm: Vec<usize> = (0..sh.d).collect();
    let count: usize = (1..=sh.d).product();
    let weight = 1.0 / count as f64;
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; sh.d];
    conjugate(rho, &sh, &perm, &mut acc, weight);
    let mut i = 0;
    while i < sh.d {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            conjugate(rho, &sh, &perm, &mut acc, weight);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(acc))
}

/// Monte-Carlo estimate over `samples` uniformly random permutations.
pub fn avg_perm_channel_sampled<R: rand::Rng + ?Sized>(
    rho: &DensityMatrix,
    env_qubits: usize,
    r_bits: usize,
    samples: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let sh = shape(rho, env_qubits, r_bits)?;
    let total = sh.env_dim * sh.d;
    let mut acc = DMatrix::from_element(total, total, C64::new(0.0, 0.0));
    let mut perm: Vec<usize> = (0..sh.d).collect();
    let weight = 1.0 / samples.max(1) as f64;
    for _ in 0..samples {
        perm.shuffle(rng);
        conjugate(rho, &sh, &perm, &mut acc, weight);
    }
    Ok(DensityMatrix::from_matrix_unchecked(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{maximally_mixed, trace_distance, Gate, StateVector};

    #[test]
    fn closed_form_matches_enumeration_m1_r1() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply(&Gate::H, &[0]).unwrap();
        s.apply(&Gate::Y, &[0]).unwrap();
        let rho = s.to_density();
        let closed = avg_perm_channel(&rho, 1).unwrap();
        let exact = avg_perm_channel_enumerated(&rho, 0, 1).unwrap();
        assert!(closed.max_entry_diff(&exact).unwrap() < 1e-12);
    }

    #[test]
    fn basis_input_gives_maximally_mixed() {
        // A basis state has no off-diagonal mass, so the average is exactly I/D.
        let out = avg_perm_channel(&DensityMatrix::basis(2, 0).unwrap(), 2).unwrap();
        assert!(out.max_entry_diff(&maximally_mixed(4).unwrap()).unwrap() < 1e-15);
        assert!(trace_distance(&out, &maximally_mixed(4).unwrap()).unwrap() < 1e-12);
    }
}
