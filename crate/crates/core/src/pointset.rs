//! Small bitsets over dense point identifiers.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of points `0..capacity`, stored as a bitset.
///
/// Up to 128 points are held inline. Equality and hashing compare the raw
/// words, so only sets sized for the same universe should be compared.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PointSet {
    words: SmallVec<[u64; 2]>,
}

impl PointSet {
    pub fn empty(capacity: usize) -> Self {
        PointSet {
            words: SmallVec::from_elem(0, capacity.div_ceil(WORD)),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let bits = (capacity - lo).min(WORD);
            *w = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn from_points(capacity: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(capacity);
        for p in points {
            s.insert(p);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, p: usize) {
        self.words[p / WORD] |= 1 << (p % WORD);
    }

    #[inline]
    pub fn remove(&mut self, p: usize) {
        self.words[p / WORD] &= !(1 << (p % WORD));
    }

    #[inline]
    pub fn contains(&self, p: usize) -> bool {
        self.words
            .get(p / WORD)
            .is_some_and(|w| w & (1 << (p % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Smallest point of `0..capacity` missing from the set.
    pub fn first_missing(&self, capacity: usize) -> Option<usize> {
        (0..capacity).find(|&p| !self.contains(p))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Lexicographic order on the sorted point lists.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
