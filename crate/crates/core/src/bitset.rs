//! Fixed-universe bit sets over element indices.

use std::cmp::Ordering;
use std::fmt;

/// A set of element indices drawn from `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::new(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % 64;
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
    pub fn contains(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Inserts `i`, returning true when it was not present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    /// Number of common members, without allocating.
    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Lexicographic order on the sorted member lists.
    pub fn lex_cmp(&self, other: &ElementSet) -> Ordering {
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros() as usize;
                let pos = i * 64 + bit;
                let in_self = a >> bit & 1 == 1;
                // The set holding the lowest differing index is smaller unless
                // the other set has nothing beyond it (it is then a prefix).
                let lacking = if in_self { other } else { self };
                let lacking_continues = lacking.iter_from(pos).next().is_some();
                let self_smaller = in_self == lacking_continues;
                return if self_smaller {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    fn iter_from(&self, start: usize) -> impl Iterator<Item = usize> + '_ {
        self.iter().skip_while(move |&i| i < start)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = ElementSet::new(130);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(129);
        assert_eq!(s.to_vec(), vec![3, 129]);
        assert_eq!(s.len(), 2);
        assert_eq!(ElementSet::full(130).len(), 130);
        s.remove(3);
        assert_eq!(s.first(), Some(129));
    }

    proptest! {
        #[test]
        fn lex_cmp_matches_sorted_vectors(a in proptest::collection::btree_set(0usize..150, 0..20),
                                          b in proptest::collection::btree_set(0usize..150, 0..20)) {
            let sa = ElementSet::from_indices(150, a.iter().copied());
            let sb = ElementSet::from_indices(150, b.iter().copied());
            let va: Vec<usize> = a.into_iter().collect();
            let vb: Vec<usize> = b.into_iter().collect();
            prop_assert_eq!(sa.lex_cmp(&sb), va.cmp(&vb));
        }
    }
}
