//! Fixed-width bit vectors indexed by vertex id.
//!
//! A [`VertexSet`] doubles as a GF(2) row vector: symmetric difference is
//! addition and the parity of an intersection is the dot product.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign};

use smallvec::{smallvec, SmallVec};

const WORD: usize = 64;

/// Subset of `0..width`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    width: usize,
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    /// The empty subset of `0..width`.
    pub fn empty(width: usize) -> Self {
        Self {
            width,
            words: smallvec![0; width.div_ceil(WORD)],
        }
    }

    /// The full set `0..width`.
    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for w in 0..width {
            s.insert(w);
        }
        s
    }

    pub fn singleton(width: usize, v: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(v);
        s
    }

    /// Builds a set from vertex ids.
    ///
    /// # Panics
    ///
    /// Panics if an id is not below `width`.
    pub fn from_ids<I: IntoIterator<Item = usize>>(width: usize, ids: I) -> Self {
        let mut s = Self::empty(width);
        for v in ids {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `width` bits of `mask` (bit `i` is vertex `i`).
    pub fn from_mask(width: usize, mask: u64) -> Self {
        let mut s = Self::empty(width);
        if width > 0 {
            let keep = if width >= WORD { u64::MAX } else { (1u64 << width) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// The low 64 bits as an integer mask.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.width && (self.words[v / WORD] >> (v % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.width, "vertex {v} out of range 0..{}", self.width);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        assert!(v < self.width, "vertex {v} out of range 0..{}", self.width);
        self.words[v / WORD] &= !(1 << (v % WORD));
    }

    #[inline]
    pub fn toggle(&mut self, v: usize) {
        assert!(v < self.width, "vertex {v} out of range 0..{}", self.width);
        self.words[v / WORD] ^= 1 << (v % WORD);
    }

    pub fn set(&mut self, v: usize, value: bool) {
        if value {
            self.insert(v);
        } else {
            self.remove(v);
        }
    }

    /// Cardinality (popcount).
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Smallest element.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    fn check_width(&self, other: &Self) {
        assert_eq!(
            self.width, other.width,
            "vertex sets of different widths combined"
        );
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out ^= other;
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_width(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_width(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_width(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    /// Complement within `0..width`.
    pub fn complement(&self) -> Self {
        Self::full(self.width).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `|self ∩ other| mod 2`, the GF(2) dot product.
    pub fn dot(&self, other: &Self) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Lexicographic order on the ascending element lists.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// The same elements viewed inside a different universe; elements at or
    /// beyond the new width are dropped.
    pub fn resized(&self, width: usize) -> Self {
        Self::from_ids(width, self.iter().filter(|&v| v < width))
    }
}

impl BitXorAssign<&VertexSet> for VertexSet {
    fn bitxor_assign(&mut self, rhs: &VertexSet) {
        self.check_width(rhs);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: &VertexSet) -> VertexSet {
        self.symmetric_difference(rhs)
    }
}

impl BitAnd for &VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: &VertexSet) -> VertexSet {
        self.intersection(rhs)
    }
}

impl BitOr for &VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: &VertexSet) -> VertexSet {
        self.union(rhs)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_membership() {
        let mut s = VertexSet::empty(70);
        s.insert(3);
        s.insert(65);
        assert!(s.contains(3) && s.contains(65) && !s.contains(4));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 65]);
        s.toggle(3);
        assert_eq!(s.first(), Some(65));
    }

    #[test]
    fn lexicographic_order() {
        let a = VertexSet::from_ids(5, [0, 4]);
        let b = VertexSet::from_ids(5, [1]);
        let c = VertexSet::from_ids(5, [0]);
        assert_eq!(a.cmp_lex(&b), Ordering::Less);
        assert_eq!(c.cmp_lex(&a), Ordering::Less);
    }

    proptest! {
        #[test]
        fn self_difference_is_empty(ids in proptest::collection::vec(0usize..100, 0..20)) {
            let s = VertexSet::from_ids(100, ids);
            prop_assert!((&s ^ &s).is_empty());
        }

        #[test]
        fn len_is_popcount(mask in any::<u64>()) {
            let s = VertexSet::from_mask(64, mask);
            prop_assert_eq!(s.len(), mask.count_ones() as usize);
            prop_assert_eq!(s.to_mask(), mask);
        }
    }
}
