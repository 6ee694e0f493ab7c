//! Bitmask sets of atoms.
//!
//! Every lattice element in this crate is identified with the set of atoms
//! below it. One machine word holds the set, so at most [`ATOM_CAP`] atoms
//! are supported.

use std::fmt;

/// Hard upper bound on the number of atoms (one `u64` per set).
pub const ATOM_CAP: usize = 64;

/// A subset of `{0, .., n-1}` with `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct AtomSet(pub u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= ATOM_CAP);
        if n == 64 {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < ATOM_CAP);
        AtomSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items.into_iter().fold(Self::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }
    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < ATOM_CAP && self.0 >> i & 1 == 1
    }
    #[inline]
    pub fn with(self, i: usize) -> Self {
        AtomSet(self.0 | 1u64 << i)
    }
    #[inline]
    pub fn without(self, i: usize) -> Self {
        AtomSet(self.0 & !(1u64 << i))
    }
    #[inline]
    pub fn union(self, o: Self) -> Self {
        AtomSet(self.0 | o.0)
    }
    #[inline]
    pub fn intersection(self, o: Self) -> Self {
        AtomSet(self.0 & o.0)
    }
    #[inline]
    pub fn difference(self, o: Self) -> Self {
        AtomSet(self.0 & !o.0)
    }
    #[inline]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }
    #[inline]
    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }

    /// Largest index plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> AtomIter {
        AtomIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical comparison key: size first, then the raw bitmask.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }
}

pub struct AtomIter(u64);

impl Iterator for AtomIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl FromIterator<usize> for AtomSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        AtomSet::from_indices(iter)
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Iterates over all subsets of `mask` (including the empty set and `mask`).
pub fn subsets(mask: AtomSet) -> impl Iterator<Item = AtomSet> {
    let m = mask.0;
    let mut cur: Option<u64> = Some(0);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == m { None } else { Some((c.wrapping_sub(m)) & m) };
        Some(AtomSet(c))
    })
}
