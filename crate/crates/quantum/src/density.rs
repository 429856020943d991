//! Mixed states, partial trace and trace distance.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::gates::{apply_matrix, lifted_index_map, Gate};
use crate::index::{validate_targets, Layout};
use crate::{check_cap, Error, Result, StateVector, C64, NORM_TOLERANCE, POSITIVITY_TOLERANCE};

const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    m: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates trace, Hermiticity and positivity.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        let dim = m.nrows();
        if dim != m.ncols() || dim == 0 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                left: m.nrows(),
                right: m.ncols(),
            });
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_cap(n_qubits)?;
        let dm = Self { n_qubits, m };
        dm.validate()?;
        Ok(dm)
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<C64>) -> Self {
        let n_qubits = m.nrows().trailing_zeros() as usize;
        Self { n_qubits, m }
    }

    pub fn from_pure(s: &StateVector) -> Self {
        let a = s.amplitudes();
        let dim = a.len();
        let m = DMatrix::from_fn(dim, dim, |r, c| a[r] * a[c].conj());
        Self {
            n_qubits: s.n_qubits(),
            m,
        }
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        Ok(Self::from_pure(&StateVector::basis(n_qubits, index)?))
    }

    /// Convex mixture `Σ p_i ρ_i`; weights must sum to 1.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::InvalidDensity("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        for (p, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: rho.dim(),
                });
            }
            m += &rho.m * C64::new(*p, 0.0);
        }
        Self::new(m)
    }

    /// Checks trace, Hermiticity and smallest eigenvalue.
    pub fn validate(&self) -> Result<()> {
        let tr = self.trace();
        if (tr.re - 1.0).abs() > NORM_TOLERANCE || tr.im.abs() > NORM_TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let herm = self.hermiticity_deviation();
        if herm > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidDensity(format!("not Hermitian ({herm:e})")));
        }
        let min = self.min_eigenvalue();
        if min < POSITIVITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for r in 0..dim {
            for c in r..dim {
                worst = worst.max((self.m[(r, c)] - self.m[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.m)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.m * &self.m).trace().re
    }

    /// Probability of observing basis state `index`.
    pub fn probability(&self, index: usize) -> f64 {
        self.m[(index, index)].re
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.m[(i, i)].re).collect()
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn fidelity_with_pure(&self, psi: &StateVector) -> Result<f64> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: psi.dim(),
            });
        }
        let a = psi.amplitudes();
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                acc += a[r].conj() * self.m[(r, c)] * a[c];
            }
        }
        Ok(acc.re)
    }

    pub fn max_entry_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        check_cap(self.n_qubits + other.n_qubits)?;
        Ok(Self {
            n_qubits: self.n_qubits + other.n_qubits,
            m: self.m.kronecker(&other.m),
        })
    }

    /// `U ρ U†` with the gate embedded on `targets`.
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
            other => {
                let u = other.matrix();
                self.conjugate_columns(targets, &u)?;
                self.m.adjoint_mut();
                self.conjugate_columns(targets, &u)?;
                self.m.adjoint_mut();
                Ok(())
            }
        }
    }

    /// Left-multiplies every column by the embedded `u`.
    fn conjugate_columns(&mut self, targets: &[usize], u: &DMatrix<C64>) -> Result<()> {
        let dim = self.dim();
        let n = self.n_qubits;
        for col in self.m.as_mut_slice().chunks_mut(dim) {
            apply_matrix(col, n, targets, u)?;
        }
        Ok(())
    }

    /// `ρ'[map[x], map[y]] = ρ[x, y]`.
    pub(crate) fn permute(&mut self, map: &[usize]) {
        let dim = self.dim();
        let mut out = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        for c in 0..dim {
            for r in 0..dim {
                out[(map[r], map[c])] = self.m[(r, c)];
            }
        }
        self.m = out;
    }

    /// Projects `targets` onto `outcome` without renormalizing.
    pub(crate) fn project(&mut self, targets: &[usize], outcome: usize) -> Result<()> {
        let layout = Layout::new(targets, self.n_qubits)?;
        let dim = self.dim();
        let keep: Vec<bool> = (0..dim).map(|i| layout.gather(i) == outcome).collect();
        for c in 0..dim {
            for r in 0..dim {
                if !(keep[r] && keep[c]) {
                    self.m[(r, c)] = C64::new(0.0, 0.0);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        self.m *= C64::new(factor, 0.0);
    }

    /// Entries in row-major order as `(re, im)` pairs.
    pub fn to_row_major_pairs(&self) -> Vec<(f64, f64)> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let v = self.m[(r, c)];
                out.push((v.re, v.im));
            }
        }
        out
    }

    /// 64-bit FNV-1a hash of the entries rounded to `1e-9`.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for (re, im) in self.to_row_major_pairs() {
            for v in [re, im] {
                let q = (v * 1e9).round() as i64;
                // -0 and 0 round to the same integer.
                for b in q.to_le_bytes() {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        h
    }
}

/// `I / 2^n`.
pub fn maximally_mixed(n_qubits: usize) -> Result<DensityMatrix> {
    check_cap(n_qubits)?;
    let dim = 1usize << n_qubits;
    let mut m = DMatrix::identity(dim, dim);
    m *= C64::new(1.0 / dim as f64, 0.0);
    Ok(DensityMatrix { n_qubits, m })
}

/// Reduced state on `keep`, in the order listed.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    let n = rho.n_qubits;
    let kept = Layout::new(keep, n)?;
    let traced_qubits: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let traced = Layout::new(&traced_qubits, n)?;
    let kd = kept.local_dim();
    let td = traced.local_dim();
    let k_off: Vec<usize> = (0..kd).map(|i| kept.scatter(i)).collect();
    let t_off: Vec<usize> = (0..td).map(|i| traced.scatter(i)).collect();
    let m = DMatrix::from_fn(kd, kd, |i, j| {
        t_off
            .iter()
            .map(|t| rho.m[(k_off[i] | t, k_off[j] | t)])
            .sum()
    });
    Ok(DensityMatrix {
        n_qubits: keep.len(),
        m,
    })
}

/// `½ Σ |λ_i(ρ − σ)|`. Both inputs are validated first.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    rho.validate()?;
    sigma.validate()?;
    let diff = &rho.m - &sigma.m;
    Ok(0.5 * hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>())
}

fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    // Symmetrize to strip rounding noise before the Hermitian solver.
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    SymmetricEigen::new(h).eigenvalues.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus() -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::from_amplitudes(vec![C64::new(h, 0.0), C64::new(h, 0.0)]).unwrap()
    }

    #[test]
    fn trace_distance_examples() {
        let z0 = DensityMatrix::basis(1, 0).unwrap();
        let z1 = DensityMatrix::basis(1, 1).unwrap();
        assert!(trace_distance(&z0, &z0).unwrap().abs() < 1e-12);
        assert!((trace_distance(&z0, &z1).unwrap() - 1.0).abs() < 1e-12);
        // Difference [[1/2,-1/2],[-1/2,-1/2]] has eigenvalues ±1/√2.
        let d = trace_distance(&z0, &plus().to_density()).unwrap();
        assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let mut bell = StateVector::zero(2).unwrap();
        bell.apply(&Gate::H, &[0]).unwrap();
        bell.apply(&Gate::Cnot, &[0, 1]).unwrap();
        let rho = bell.to_density();
        let tau = maximally_mixed(1).unwrap();
        for q in 0..2 {
            let red = partial_trace(&rho, &[q]).unwrap();
            assert!(red.max_entry_diff(&tau).unwrap() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product_recovers_factor() {
        let a = plus().to_density();
        let b = DensityMatrix::basis(2, 0b01).unwrap();
        let joint = a.tensor(&b).unwrap();
        assert!(partial_trace(&joint, &[0]).unwrap().max_entry_diff(&a).unwrap() < 1e-12);
        assert!(partial_trace(&joint, &[1, 2]).unwrap().max_entry_diff(&b).unwrap() < 1e-12);
        assert_eq!(partial_trace(&joint, &[]), Err(Error::EmptyKeep));
    }

    #[test]
    fn partial_trace_respects_keep_order() {
        let rho = DensityMatrix::basis(2, 0b10).unwrap();
        let swapped = partial_trace(&rho, &[1, 0]).unwrap();
        assert!(swapped.max_entry_diff(&DensityMatrix::basis(2, 0b01).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_non_positive_input() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(1.5, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-0.5, 0.0)],
        );
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn density_apply_matches_pure_evolution() {
        let mut s = StateVector::zero(2).unwrap();
        let mut rho = s.to_density();
        for (g, t) in [(Gate::H, vec![1]), (Gate::Cnot, vec![1, 0]), (Gate::Y, vec![0])] {
            s.apply(&g, &t).unwrap();
            rho.apply(&g, &t).unwrap();
        }
        assert!(rho.max_entry_diff(&s.to_density()).unwrap() < 1e-12);
    }

    #[test]
    fn maximally_mixed_basics() {
        let t1 = maximally_mixed(1).unwrap();
        assert_eq!(t1.diagonal(), vec![0.5, 0.5]);
        assert!((maximally_mixed(3).unwrap().trace().re - 1.0).abs() < 1e-15);
        assert_eq!(trace_distance(&t1, &t1).unwrap(), 0.0);
        assert!(maximally_mixed(13).is_err());
    }
}
