use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Maximum ground-set size representable by a [`Subset`].
pub const MAX_ELEMENTS: usize = 30;

/// A subset of the ground set `{0, .., n-1}`, stored as a bitmask (bit `i` = element `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, including `self` and the empty set, in increasing bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

/// Submask enumeration `(sub - mask) & mask` in increasing order.
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(Subset(cur))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = elements.iter().find(|&&i| i >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} exceeds the bitmask width"
            )));
        }
        Ok(Subset::from_elements(elements))
    }
}
