//! Classical functions as quantum oracles.
//!
//! A type-(1) oracle computes `|x, y⟩ ↦ |x, y ⊕ f(x)⟩`; a type-(2) oracle applies
//! a bijection in place, `|x⟩ ↦ |P(x)⟩`. Both are basis permutations, so the
//! conversion circuits between them are evaluated on basis indices and only
//! densified at the end.

use crate::gates::PermutationOp;
use crate::index::Layout;
use crate::{Error, Permutation, Result, UnitaryOp};

/// Basis permutation of the type-(1) oracle for a total function table.
pub fn type1_permutation(table: &[u64], in_bits: usize, out_bits: usize) -> Result<PermutationOp> {
    if table.len() != 1usize << in_bits {
        return Err(Error::IncompleteTable {
            expected: 1 << in_bits,
            got: table.len(),
        });
    }
    if let Some(&v) = table.iter().find(|&&v| out_bits < 64 && v >> out_bits != 0) {
        return Err(Error::ValueOutOfRange {
            value: v,
            bits: out_bits,
        });
    }
    let dim = 1usize << (in_bits + out_bits);
    let forward = (0..dim)
        .map(|i| {
            let x = i >> out_bits;
            i ^ table[x] as usize
        })
        .collect();
    Ok(PermutationOp::new(Permutation::from_forward(
        in_bits + out_bits,
        forward,
    )?))
}

/// Dense type-(1) oracle.
pub fn type1_oracle(table: &[u64], in_bits: usize, out_bits: usize) -> Result<UnitaryOp> {
    type1_permutation(table, in_bits, out_bits)?.to_unitary()
}

/// Dense type-(2) oracle.
pub fn type2_oracle(perm: &Permutation) -> Result<UnitaryOp> {
    UnitaryOp::from_permutation(perm)
}

/// Straight-line reversible circuit over basis indices.
#[derive(Debug, Clone)]
struct Reversible {
    n_qubits: usize,
    steps: Vec<Step>,
}

#[derive(Debug, Clone)]
enum Step {
    Cnot(usize, usize),
    Swap(usize, usize),
    Perm(Permutation, Layout),
}

impl Reversible {
    fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            steps: Vec::new(),
        }
    }

    fn bit(&self, q: usize) -> usize {
        1usize << (self.n_qubits - 1 - q)
    }

    fn perm(&mut self, p: &Permutation, targets: &[usize]) -> Result<()> {
        let layout = Layout::new(targets, self.n_qubits)?;
        if layout.local_dim() != p.size() {
            return Err(Error::DimensionMismatch {
                left: p.size(),
                right: layout.local_dim(),
            });
        }
        self.steps.push(Step::Perm(p.clone(), layout));
        Ok(())
    }

    fn eval(&self, mut i: usize) -> usize {
        for s in &self.steps {
            i = match s {
                Step::Cnot(c, t) => {
                    if i & self.bit(*c) != 0 {
                        i ^ self.bit(*t)
                    } else {
                        i
                    }
                }
                Step::Swap(a, b) => {
                    let (ma, mb) = (self.bit(*a), self.bit(*b));
                    if (i & ma != 0) != (i & mb != 0) {
                        i ^ ma ^ mb
                    } else {
                        i
                    }
                }
                Step::Perm(p, layout) => layout.clear(i) | layout.scatter(p.apply(layout.gather(i))),
            }
        }
        i
    }

    fn build(&self) -> Result<PermutationOp> {
        let forward = (0..1usize << self.n_qubits).map(|i| self.eval(i)).collect();
        Ok(PermutationOp::new(Permutation::from_forward(
            self.n_qubits,
            forward,
        )?))
    }
}

/// Type-(1) oracle built from a type-(2) pair acting on `c` qubits, for an
/// `m`-bit plaintext embedded as `x ‖ 0^{c−m}`.
///
/// Registers are `X` (m), `Y` (c) and a `c`-qubit ancilla `A`. The circuit copies
/// `x` into `A`, encrypts `A` in place, XORs `A` into `Y`, decrypts `A` and
/// uncopies. Returned on all `m + 2c` qubits; see [`restrict_to_zero_ancilla`].
pub fn type1_from_type2(enc2: &PermutationOp, dec2: &PermutationOp, m_bits: usize) -> Result<PermutationOp> {
    let c = enc2.n_qubits();
    if dec2.n_qubits() != c || m_bits > c || m_bits == 0 {
        return Err(Error::DimensionMismatch {
            left: enc2.n_qubits(),
            right: dec2.n_qubits(),
        });
    }
    let n = m_bits + 2 * c;
    let x = |i: usize| i;
    let y = |i: usize| m_bits + i;
    let a = |i: usize| m_bits + c + i;
    let a_reg: Vec<usize> = (0..c).map(a).collect();
    let mut circ = Reversible::new(n);
    for i in 0..m_bits {
        circ.steps.push(Step::Cnot(x(i), a(i)));
    }
    circ.perm(enc2.permutation(), &a_reg)?;
    for i in 0..c {
        circ.steps.push(Step::Cnot(a(i), y(i)));
    }
    circ.perm(dec2.permutation(), &a_reg)?;
    for i in 0..m_bits {
        circ.steps.push(Step::Cnot(x(i), a(i)));
    }
    circ.build()
}

/// Type-(2) action built from type-(1) encryption and decryption oracles.
///
/// `enc1` acts on `m + c` qubits (`x`, then output), `dec1` on `c + m` qubits.
/// The working register `W` (c qubits) holds `x ‖ 0^{c−m}`; `C` is a `c`-qubit
/// ancilla. `enc1` writes `Enc(x)` into `C`, `dec1` erases `x` from `W`, and the
/// registers are swapped. Returned on all `2c` qubits; only columns with
/// `W = x ‖ 0` and `C = 0` realize the type-(2) oracle.
pub fn type2_from_type1(
    enc1: &PermutationOp,
    dec1: &PermutationOp,
    m_bits: usize,
    c_bits: usize,
) -> Result<PermutationOp> {
    if enc1.n_qubits() != m_bits + c_bits || dec1.n_qubits() != m_bits + c_bits || m_bits > c_bits {
        return Err(Error::DimensionMismatch {
            left: enc1.n_qubits(),
            right: m_bits + c_bits,
        });
    }
    let n = 2 * c_bits;
    let w = |i: usize| i;
    let cr = |i: usize| c_bits + i;
    let mut circ = Reversible::new(n);
    let enc_targets: Vec<usize> = (0..m_bits).map(w).chain((0..c_bits).map(cr)).collect();
    let dec_targets: Vec<usize> = (0..c_bits).map(cr).chain((0..m_bits).map(w)).collect();
    circ.perm(enc1.permutation(), &enc_targets)?;
    circ.perm(dec1.permutation(), &dec_targets)?;
    for i in 0..c_bits {
        circ.steps.push(Step::Swap(w(i), cr(i)));
    }
    circ.build()
}

/// For each basis input on the non-ancilla qubits (with ancilla `0`), the output
/// index on those qubits, or `None` when the ancilla is left dirty.
pub fn zero_ancilla_columns(op: &PermutationOp, ancilla: &[usize]) -> Result<Vec<Option<usize>>> {
    let n = op.n_qubits();
    let anc = Layout::new(ancilla, n)?;
    let data_qubits: Vec<usize> = (0..n).filter(|q| !ancilla.contains(q)).collect();
    let data = Layout::new(&data_qubits, n)?;
    Ok((0..data.local_dim())
        .map(|local| {
            let out = op.permutation().apply(data.scatter(local));
            (anc.gather(out) == 0).then(|| data.gather(out))
        })
        .collect())
}

/// The operator on the non-ancilla qubits when the zero-ancilla slice is closed.
pub fn restrict_to_zero_ancilla(op: &PermutationOp, ancilla: &[usize]) -> Result<UnitaryOp> {
    let cols = zero_ancilla_columns(op, ancilla)?;
    let bits = op.n_qubits() - ancilla.len();
    let forward: Option<Vec<usize>> = cols.into_iter().collect();
    let forward = forward.ok_or(Error::NotBijective { domain: 1 << bits })?;
    UnitaryOp::from_permutation(&Permutation::from_forward(bits, forward)?)
}
