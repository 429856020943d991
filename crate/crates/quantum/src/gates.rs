//! Gates, dense unitaries and basis permutations.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::index::Layout;
use crate::perm::Permutation;
use crate::{check_cap, Error, Result, C64, UNITARY_TOLERANCE};

/// A gate applied to an ordered list of target qubits.
///
/// Multi-qubit gates read their targets MSB first: for [`Gate::Cnot`] the first
/// target is the control.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H,
    X,
    Y,
    Z,
    Cnot,
    Swap,
    Unitary(UnitaryOp),
    Permutation(PermutationOp),
}

impl Gate {
    pub fn arity(&self) -> usize {
        match self {
            Gate::H | Gate::X | Gate::Y | Gate::Z => 1,
            Gate::Cnot | Gate::Swap => 2,
            Gate::Unitary(u) => u.n_qubits(),
            Gate::Permutation(p) => p.n_qubits(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H => "H",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::Cnot => "CNOT",
            Gate::Swap => "SWAP",
            Gate::Unitary(_) => "U",
            Gate::Permutation(_) => "P",
        }
    }

    /// Dense matrix of the gate on its own targets.
    pub fn matrix(&self) -> DMatrix<C64> {
        let r = |x: f64| C64::new(x, 0.0);
        let i = C64::new(0.0, 1.0);
        let z = C64::new(0.0, 0.0);
        match self {
            Gate::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                DMatrix::from_row_slice(2, 2, &[r(s), r(s), r(s), r(-s)])
            }
            Gate::X => DMatrix::from_row_slice(2, 2, &[z, r(1.0), r(1.0), z]),
            Gate::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
            Gate::Z => DMatrix::from_row_slice(2, 2, &[r(1.0), z, z, r(-1.0)]),
            Gate::Cnot => permutation_matrix(&[0, 1, 3, 2]),
            Gate::Swap => permutation_matrix(&[0, 2, 1, 3]),
            Gate::Unitary(u) => u.matrix().clone(),
            Gate::Permutation(p) => permutation_matrix(p.permutation().forward_table()),
        }
    }
}

/// 0/1 matrix sending basis column `x` to row `table[x]`.
pub(crate) fn permutation_matrix(table: &[usize]) -> DMatrix<C64> {
    let n = table.len();
    let mut m = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for (x, &y) in table.iter().enumerate() {
        m[(y, x)] = C64::new(1.0, 0.0);
    }
    m
}

/// A dense unitary on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOp {
    n_qubits: usize,
    matrix: DMatrix<C64>,
}

impl UnitaryOp {
    /// Wraps a matrix after checking shape and `U U† = I` within tolerance.
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_cap(n_qubits)?;
        let op = Self { n_qubits, matrix };
        let dev = op.unitarity_deviation();
        if dev > UNITARY_TOLERANCE {
            return Err(Error::NotUnitary(dev));
        }
        Ok(op)
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits)?;
        Ok(Self {
            n_qubits,
            matrix: DMatrix::identity(1 << n_qubits, 1 << n_qubits),
        })
    }

    pub fn from_permutation(perm: &Permutation) -> Result<Self> {
        check_cap(perm.domain_bits())?;
        Ok(Self {
            n_qubits: perm.domain_bits(),
            matrix: permutation_matrix(perm.forward_table()),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &UnitaryOp) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Largest entrywise deviation of `U U†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = &self.matrix * self.matrix.adjoint();
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((prod[(r, c)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest entrywise difference to another operator of the same size.
    pub fn max_entry_diff(&self, other: &UnitaryOp) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// True when every entry is 0 or 1 and each row and column holds a single 1.
    pub fn is_permutation_matrix(&self) -> bool {
        let dim = self.dim();
        let tol = 1e-12;
        for r in 0..dim {
            let mut ones = 0;
            for c in 0..dim {
                let v = self.matrix[(r, c)];
                if (v - C64::new(1.0, 0.0)).norm() < tol {
                    ones += 1;
                } else if v.norm() > tol {
                    return false;
                }
            }
            if ones != 1 {
                return false;
            }
        }
        (0..dim).all(|c| {
            (0..dim)
                .filter(|&r| (self.matrix[(r, c)] - C64::new(1.0, 0.0)).norm() < tol)
                .count()
                == 1
        })
    }

    /// Basis table of a 0/1 permutation matrix.
    pub fn to_permutation(&self) -> Result<Permutation> {
        if !self.is_permutation_matrix() {
            return Err(Error::NotBijective { domain: self.dim() });
        }
        let dim = self.dim();
        let forward = (0..dim)
            .map(|c| (0..dim).find(|&r| self.matrix[(r, c)].re > 0.5).unwrap_or(0))
            .collect();
        Permutation::from_forward(self.n_qubits, forward)
    }

    /// Embeds the operator on `targets` of an `n_qubits` register.
    pub fn embed(&self, targets: &[usize], n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits)?;
        if targets.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                left: targets.len(),
                right: self.n_qubits,
            });
        }
        let dim = 1 << n_qubits;
        let mut full = DMatrix::identity(dim, dim);
        for c in 0..dim {
            let mut col: Vec<C64> = full.column(c).iter().copied().collect();
            apply_matrix(&mut col, n_qubits, targets, &self.matrix)?;
            for (r, v) in col.into_iter().enumerate() {
                full[(r, c)] = v;
            }
        }
        Ok(Self {
            n_qubits,
            matrix: full,
        })
    }
}

/// A computational-basis permutation on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationOp {
    perm: Permutation,
}

impl PermutationOp {
    /// Basis permutations are index maps, so no qubit cap applies until the
    /// operator is densified.
    pub fn new(perm: Permutation) -> Self {
        Self { perm }
    }

    pub fn n_qubits(&self) -> usize {
        self.perm.domain_bits()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn adjoint(&self) -> Self {
        Self {
            perm: self.perm.inverse(),
        }
    }

    pub fn to_unitary(&self) -> Result<UnitaryOp> {
        UnitaryOp::from_permutation(&self.perm)
    }
}

/// Applies a dense `2^k x 2^k` matrix to `targets` of an amplitude vector.
pub(crate) fn apply_matrix(
    amps: &mut [C64],
    n_qubits: usize,
    targets: &[usize],
    m: &DMatrix<C64>,
) -> Result<()> {
    let layout = Layout::new(targets, n_qubits)?;
    let k = layout.local_dim();
    if m.nrows() != k || m.ncols() != k {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: k,
        });
    }
    let offsets: Vec<usize> = (0..k).map(|l| layout.scatter(l)).collect();
    let mut buf = vec![C64::new(0.0, 0.0); k];
    let bases: Vec<usize> = layout.bases().collect();
    for base in bases {
        for (l, off) in offsets.iter().enumerate() {
            buf[l] = amps[base | off];
        }
        for (row, off) in offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (col, b) in buf.iter().enumerate() {
                let coeff = m[(row, col)];
                if coeff.re != 0.0 || coeff.im != 0.0 {
                    acc += coeff * b;
                }
            }
            amps[base | off] = acc;
        }
    }
    Ok(())
}

/// Full-register index map induced by a permutation acting on `targets`.
pub(crate) fn lifted_index_map(
    perm: &Permutation,
    targets: &[usize],
    n_qubits: usize,
) -> Result<Vec<usize>> {
    let layout = Layout::new(targets, n_qubits)?;
    if layout.local_dim() != perm.size() {
        return Err(Error::DimensionMismatch {
            left: perm.size(),
            right: layout.local_dim(),
        });
    }
    Ok((0..1usize << n_qubits)
        .map(|g| layout.clear(g) | layout.scatter(perm.apply(layout.gather(g))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pauli_relation_xz_equals_i_y_up_to_phase() {
        let xz = Gate::X.matrix() * Gate::Z.matrix();
        let iy = Gate::Y.matrix() * c(0.0, 1.0);
        // With these matrices XZ = -iY exactly and ZX = iY.
        let phase = xz[(1, 0)] / iy[(1, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-15);
        for (a, b) in xz.iter().zip(iy.iter()) {
            assert!((a - b * phase).norm() < 1e-15);
        }
        let zx = Gate::Z.matrix() * Gate::X.matrix();
        for (a, b) in zx.iter().zip(iy.iter()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn standard_gates_are_unitary() {
        for g in [Gate::H, Gate::X, Gate::Y, Gate::Z, Gate::Cnot, Gate::Swap] {
            let u = UnitaryOp::new(g.matrix()).unwrap();
            assert!(u.unitarity_deviation() < 1e-12, "{}", g.name());
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(UnitaryOp::new(m), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn embedding_cnot_reversed_targets() {
        // CNOT with control on qubit 1 and target on qubit 0 maps |01> -> |11>.
        let cnot = UnitaryOp::new(Gate::Cnot.matrix()).unwrap();
        let full = cnot.embed(&[1, 0], 2).unwrap();
        assert!(full.is_permutation_matrix());
        assert_eq!(full.matrix()[(0b11, 0b01)], c(1.0, 0.0));
        assert_eq!(full.matrix()[(0b10, 0b10)], c(1.0, 0.0));
    }

    #[test]
    fn lifted_map_matches_embedded_matrix() {
        let perm = Permutation::from_forward(2, vec![3, 0, 1, 2]).unwrap();
        let map = lifted_index_map(&perm, &[2, 0], 3).unwrap();
        let embedded = UnitaryOp::from_permutation(&perm)
            .unwrap()
            .embed(&[2, 0], 3)
            .unwrap();
        for (x, &y) in map.iter().enumerate() {
            assert_eq!(embedded.matrix()[(y, x)], c(1.0, 0.0));
        }
    }
}
