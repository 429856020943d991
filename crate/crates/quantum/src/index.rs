use crate::{Error, Result};

/// Bit mask of qubit `q` inside an `n`-qubit basis index (qubit 0 is the MSB).
#[inline]
pub(crate) fn qubit_mask(q: usize, n_qubits: usize) -> usize {
    1usize << (n_qubits - 1 - q)
}

pub(crate) fn validate_targets(targets: &[usize], n_qubits: usize) -> Result<()> {
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: t,
                n_qubits,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget(t));
        }
    }
    Ok(())
}

/// Placement of a small register inside a larger one.
///
/// Local index bit `k` (counted MSB first over `targets`) lives at the global
/// position of `targets[k]`.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    masks: Vec<usize>,
    union: usize,
    dim: usize,
}

impl Layout {
    pub(crate) fn new(targets: &[usize], n_qubits: usize) -> Result<Self> {
        validate_targets(targets, n_qubits)?;
        let masks: Vec<usize> = targets.iter().map(|&t| qubit_mask(t, n_qubits)).collect();
        let union = masks.iter().fold(0, |acc, m| acc | m);
        Ok(Self {
            masks,
            union,
            dim: 1 << n_qubits,
        })
    }

    pub(crate) fn local_dim(&self) -> usize {
        1 << self.masks.len()
    }

    /// Global offset contributed by local index `local`.
    #[inline]
    pub(crate) fn scatter(&self, local: usize) -> usize {
        let k = self.masks.len();
        let mut out = 0;
        for (pos, m) in self.masks.iter().enumerate() {
            if local & (1 << (k - 1 - pos)) != 0 {
                out |= m;
            }
        }
        out
    }

    /// Local index read off a global index.
    #[inline]
    pub(crate) fn gather(&self, global: usize) -> usize {
        let k = self.masks.len();
        let mut out = 0;
        for (pos, m) in self.masks.iter().enumerate() {
            if global & m != 0 {
                out |= 1 << (k - 1 - pos);
            }
        }
        out
    }

    /// Global indices whose target bits are all zero.
    pub(crate) fn bases(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(move |i| i & self.union == 0)
    }

    pub(crate) fn clear(&self, global: usize) -> usize {
        global & !self.union
    }
}
