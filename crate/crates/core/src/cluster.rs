//! Bit-indexed subsets of a ground set.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Iterator over the set bits of a word, lowest index first.
#[derive(Debug, Clone, Copy)]
pub struct Bits(u64);

impl Bits {
    pub fn new(word: u64) -> Self {
        Bits(word)
    }
}

impl Iterator for Bits {
    type Item = usize;

    #[inline]
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

impl ExactSizeIterator for Bits {}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A non-empty subset of a ground set of at most 64 elements.
///
/// The ground set itself is not stored; containers ([`SetSystem`],
/// [`TransitFunction`]) validate that members are in range.
///
/// [`SetSystem`]: crate::SetSystem
/// [`TransitFunction`]: crate::TransitFunction
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cluster(u64);

impl Cluster {
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            Err(Error::EmptyCluster)
        } else {
            Ok(Cluster(bits))
        }
    }

    pub fn singleton(x: usize) -> Self {
        assert!(x < 64, "element index {x} exceeds capacity");
        Cluster(1 << x)
    }

    pub fn pair(x: usize, y: usize) -> Self {
        Cluster::singleton(x).union(Cluster::singleton(y))
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e >= 64 {
                return Err(Error::ElementOutOfRange { index: e, n: 64 });
            }
            bits |= 1 << e;
        }
        Cluster::from_bits(bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Always false; present for symmetry with `len`.
    #[inline]
    pub fn is_empty(self) -> bool {
        false
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: Cluster) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Cluster) -> bool {
        self.0 & other.0 != 0
    }

    /// Intersecting and neither contains the other.
    pub fn properly_overlaps(self, other: Cluster) -> bool {
        self.intersects(other) && !self.is_subset(other) && !other.is_subset(self)
    }

    #[inline]
    pub fn union(self, other: Cluster) -> Cluster {
        Cluster(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Cluster) -> Option<Cluster> {
        let bits = self.0 & other.0;
        (bits != 0).then_some(Cluster(bits))
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Highest member index; clusters over a ground set of `n` elements have
    /// `max_element() < n`.
    pub fn max_element(self) -> usize {
        63 - self.0.leading_zeros() as usize
    }

    pub fn min_element(self) -> usize {
        self.0.trailing_zeros() as usize
    }
}

/// Lexicographic comparison of the sorted member lists of two bitmasks.
pub(crate) fn lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let first = diff.trailing_zeros();
    // Whichever set holds the first differing element sorts first, unless the
    // other set has run out of elements (a proper prefix sorts first).
    let below = (1u64 << first) - 1;
    let (holder, other) = if a >> first & 1 == 1 { (a, b) } else { (b, a) };
    let other_rest = other & !below;
    let holder_wins = other_rest != 0;
    let a_first = if holder == a { holder_wins } else { !holder_wins };
    if a_first {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Canonical order: smaller clusters first, ties broken lexicographically by
/// the sorted member list.
impl Ord for Cluster {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| lex_cmp(self.0, other.0))
    }
}

impl PartialOrd for Cluster {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
