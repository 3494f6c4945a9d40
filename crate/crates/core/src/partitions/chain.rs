use num::BigRational;

use crate::error::{Error, Result};
use crate::setfn::Subset;

/// A strictly increasing chain `C_1 ⊂ … ⊂ C_k = S` with strictly decreasing values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedChain<V> {
    pub chain: Vec<Subset>,
    pub values: Vec<V>,
}

/// Essential values and the canonical chain.
pub type CanonicalChain = ValuedChain<i64>;

/// Critical values and the principal chain.
pub type PrincipalChain = ValuedChain<BigRational>;

impl<V: Ord> ValuedChain<V> {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Blocks `S_j = C_j − C_{j−1}`.
    pub fn blocks(&self) -> Vec<Subset> {
        let mut prev = Subset::EMPTY;
        self.chain
            .iter()
            .map(|&c| {
                let block = c.difference(prev);
                prev = c;
                block
            })
            .collect()
    }

    /// Index of the block containing `s`.
    pub fn block_of(&self, s: usize) -> Option<usize> {
        self.chain.iter().position(|c| c.contains(s))
    }

    /// Checks nesting, the final member and monotonicity of the values.
    pub fn validate(&self, full: Subset) -> Result<()> {
        if self.chain.len() != self.values.len() {
            return Err(Error::Invalid("chain and value lengths differ".into()));
        }
        if self.chain.last() != Some(&full) {
            return Err(Error::Invalid(
                "chain does not end at the ground set".into(),
            ));
        }
        let mut prev = Subset::EMPTY;
        for &c in &self.chain {
            if !prev.is_subset_of(c) || prev == c {
                return Err(Error::Invalid(format!(
                    "chain is not strictly nested at {c:?}"
                )));
            }
            prev = c;
        }
        if self.values.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Invalid(
                "chain values are not strictly decreasing".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_and_validation() {
        let c = CanonicalChain {
            chain: vec![Subset::from_elements([0, 1]), Subset::full(4)],
            values: vec![2, 1],
        };
        assert_eq!(
            c.blocks(),
            vec![Subset::from_elements([0, 1]), Subset::from_elements([2, 3])]
        );
        assert_eq!(c.block_of(3), Some(1));
        assert!(c.validate(Subset::full(4)).is_ok());
        assert!(c.validate(Subset::full(5)).is_err());
        let bad = CanonicalChain {
            chain: vec![Subset::full(2), Subset::full(2)],
            values: vec![2, 1],
        };
        assert!(bad.validate(Subset::full(2)).is_err());
        let flat = CanonicalChain {
            chain: vec![Subset::singleton(0), Subset::full(2)],
            values: vec![1, 1],
        };
        assert!(flat.validate(Subset::full(2)).is_err());
    }
}
