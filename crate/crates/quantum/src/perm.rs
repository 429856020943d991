//! Tabulated bijections on `{0,1}^d`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A bijection on `{0, …, 2^domain_bits − 1}` stored with its inverse table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    domain_bits: usize,
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its forward table, rejecting non-bijections.
    pub fn from_forward(domain_bits: usize, forward: Vec<usize>) -> Result<Self> {
        let size = 1usize << domain_bits;
        if forward.len() != size {
            return Err(Error::IncompleteTable {
                expected: size,
                got: forward.len(),
            });
        }
        let mut inverse = vec![usize::MAX; size];
        for (x, &y) in forward.iter().enumerate() {
            if y >= size || inverse[y] != usize::MAX {
                return Err(Error::NotBijective { domain: size });
            }
            inverse[y] = x;
        }
        Ok(Self {
            domain_bits,
            forward,
            inverse,
        })
    }

    pub fn identity(domain_bits: usize) -> Self {
        let forward: Vec<usize> = (0..1usize << domain_bits).collect();
        Self {
            domain_bits,
            inverse: forward.clone(),
            forward,
        }
    }

    pub fn domain_bits(&self) -> usize {
        self.domain_bits
    }

    pub fn size(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.forward[x]
    }

    #[inline]
    pub fn apply_inverse(&self, y: usize) -> usize {
        self.inverse[y]
    }

    pub fn forward_table(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        Self {
            domain_bits: self.domain_bits,
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.domain_bits != other.domain_bits {
            return Err(Error::DimensionMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let forward = other.forward.iter().map(|&y| self.forward[y]).collect();
        Self::from_forward(self.domain_bits, forward)
    }

    pub fn fixed_points(&self) -> usize {
        self.forward
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x == y)
            .count()
    }

    /// Exhaustive check that both tables compose to the identity.
    pub fn is_consistent(&self) -> bool {
        (0..self.size()).all(|z| self.forward[self.inverse[z]] == z && self.inverse[self.forward[z]] == z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_collisions_and_short_tables() {
        assert!(matches!(
            Permutation::from_forward(2, vec![0, 1, 1, 3]),
            Err(Error::NotBijective { domain: 4 })
        ));
        assert!(matches!(
            Permutation::from_forward(2, vec![0, 1, 2]),
            Err(Error::IncompleteTable { expected: 4, got: 3 })
        ));
        assert!(Permutation::from_forward(1, vec![0, 2]).is_err());
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let p = Permutation::from_forward(2, vec![2, 0, 3, 1]).unwrap();
        assert!(p.is_consistent());
        assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(2));
        assert_eq!(p.fixed_points(), 0);
        assert_eq!(Permutation::identity(3).fixed_points(), 8);
    }
}
