//! Dense bit-vector subsets of `0..universe`.

use std::fmt;

const WORD: usize = 64;

/// A subset of `0..universe` stored as a dense bit vector.
///
/// Bits past `universe` in the last word are always zero, so equality and
/// hashing on the word vector agree with set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: usize,
    words: Vec<u64>,
}

/// Subsets of a group's element index range.
pub type GroupSubset = Subset;

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD)
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset { universe, words: vec![0; word_count(universe)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Subset { universe, words: vec![!0; word_count(universe)] };
        s.trim();
        s
    }

    /// Builds a subset from indices. Returns `None` if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Option<Self> {
        let mut s = Subset::empty(universe);
        for i in items {
            if i >= universe {
                return None;
            }
            s.insert(i);
        }
        Some(s)
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        let mut s = Subset::empty(universe);
        s.insert(i);
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    /// Panics if `i` is outside the universe.
    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.universe);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &Subset) {
        assert_eq!(self.universe, other.universe, "subsets over different universes");
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Subset { universe: self.universe, words }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Subset { universe: self.universe, words }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Subset { universe: self.universe, words }
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Subset {
        self.check_universe(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Subset { universe: self.universe, words }
    }

    pub fn complement(&self) -> Subset {
        let mut s = Subset { universe: self.universe, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Subset) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection_len(&self, other: &Subset) -> usize {
        self.check_universe(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn symmetric_difference_len(&self, other: &Subset) -> usize {
        self.check_universe(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// True when `self ∩ other` and `self \ other` are both nonempty.
    #[inline]
    pub fn is_split_by(&self, other: &Subset) -> bool {
        let mut inside = false;
        let mut outside = false;
        for (a, b) in self.words.iter().zip(&other.words) {
            inside |= a & b != 0;
            outside |= a & !b != 0;
            if inside && outside {
                return true;
            }
        }
        false
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
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

impl<'a> IntoIterator for &'a Subset {
    type Item = usize;
    type IntoIter = Ones<'a>;

    fn into_iter(self) -> Ones<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_trims_tail() {
        let s = Subset::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.complement().is_empty());
        assert_eq!(Subset::full(70), Subset::from_indices(70, 0..70).unwrap());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(Subset::from_indices(5, [0, 5]).is_none());
        assert!(!Subset::full(5).contains(5));
    }

    #[test]
    fn split_detection() {
        let a = Subset::from_indices(10, [1, 2, 3]).unwrap();
        assert!(a.is_split_by(&Subset::from_indices(10, [2]).unwrap()));
        assert!(!a.is_split_by(&Subset::from_indices(10, [1, 2, 3, 4]).unwrap()));
        assert!(!a.is_split_by(&Subset::empty(10)));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            n in 1usize..200,
            xs in proptest::collection::vec(0usize..200, 0..60),
            ys in proptest::collection::vec(0usize..200, 0..60),
        ) {
            use std::collections::BTreeSet;
            let xs: BTreeSet<usize> = xs.into_iter().filter(|&x| x < n).collect();
            let ys: BTreeSet<usize> = ys.into_iter().filter(|&y| y < n).collect();
            let a = Subset::from_indices(n, xs.iter().copied()).unwrap();
            let b = Subset::from_indices(n, ys.iter().copied()).unwrap();
            prop_assert_eq!(a.to_vec(), xs.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(a.union(&b).to_vec(), xs.union(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersection(&b).to_vec(), xs.intersection(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.symmetric_difference(&b).len(), xs.symmetric_difference(&ys).count());
            prop_assert_eq!(a.symmetric_difference_len(&b), xs.symmetric_difference(&ys).count());
            prop_assert_eq!(a.complement().len(), n - xs.len());
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
        }
    }
}
