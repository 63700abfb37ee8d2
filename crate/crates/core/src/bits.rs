//! Small fixed-capacity index sets.
//!
//! Vertex sets and edge sets are sets of indices below [`Bits::CAPACITY`],
//! stored in a single `u128`. Ordering is numeric on the underlying word,
//! which gives a total order that is cheap and deterministic.

use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits(u128);

/// A set of vertex indices.
pub type VertexSet = Bits;
/// A set of edge indices.
pub type EdgeSet = Bits;

impl Bits {
    pub const CAPACITY: usize = 128;
    pub const EMPTY: Bits = Bits(0);

    pub const fn from_word(word: u128) -> Self {
        Bits(word)
    }

    pub const fn word(self) -> u128 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "index set capacity is {}", Self::CAPACITY);
        if n == Self::CAPACITY {
            Bits(u128::MAX)
        } else {
            Bits((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < Self::CAPACITY, "index {i} out of range");
        Bits(1u128 << i)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < Self::CAPACITY && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    pub fn remove(&mut self, i: usize) {
        if i < Self::CAPACITY {
            self.0 &= !(1u128 << i);
        }
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        self | Bits::singleton(i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        let mut b = self;
        b.remove(i);
        b
    }

    pub fn union(self, other: Bits) -> Bits {
        Bits(self.0 | other.0)
    }

    pub fn intersection(self, other: Bits) -> Bits {
        Bits(self.0 & other.0)
    }

    pub fn difference(self, other: Bits) -> Bits {
        Bits(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Bits) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Bits) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> BitsIter {
        BitsIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

impl core::ops::BitOr for Bits {
    type Output = Bits;
    fn bitor(self, rhs: Bits) -> Bits {
        self.union(rhs)
    }
}

impl core::ops::BitAnd for Bits {
    type Output = Bits;
    fn bitand(self, rhs: Bits) -> Bits {
        self.intersection(rhs)
    }
}

impl core::ops::Sub for Bits {
    type Output = Bits;
    fn sub(self, rhs: Bits) -> Bits {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for Bits {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut b = Bits::EMPTY;
        for i in iter {
            b.insert(i);
        }
        b
    }
}

impl IntoIterator for Bits {
    type Item = usize;
    type IntoIter = BitsIter;
    fn into_iter(self) -> BitsIter {
        self.iter()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitsIter(u128);

impl Iterator for BitsIter {
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
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BitsIter {}

/// Iterator over the subsets of a mask (Gosper-free submask walk).
pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = Bits;

    fn next(&mut self) -> Option<Bits> {
        let cur = self.next?;
        // next submask in increasing order: ((cur | !mask) + 1) & mask
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(Bits(cur))
    }
}
