//! Fixed-capacity bitset over element indices.
//!
//! Every carrier handled by the library is small, so subsets are stored
//! inline as four machine words. The type is `Copy`, which keeps the
//! relation tables cheap to pass around.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub};

const WORDS: usize = 4;

/// A subset of `0..ElemSet::CAPACITY`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet([u64; WORDS]);

impl ElemSet {
    /// Largest carrier size representable.
    pub const CAPACITY: usize = 64 * WORDS;

    pub const fn empty() -> Self {
        ElemSet([0; WORDS])
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        let mut s = Self::empty();
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                s.0[w] = u64::MAX;
            } else if n > lo {
                s.0[w] = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::empty();
        s.insert(i);
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        (self.0[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        for (w, word) in self.0.iter().enumerate() {
            if *word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> Iter {
        Iter { words: self.0, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Complement of `self` within `0..n`.
    pub fn complement_in(&self, n: usize) -> ElemSet {
        ElemSet::full(n) - *self
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl BitAnd for ElemSet {
    type Output = ElemSet;
    #[inline]
    fn bitand(mut self, rhs: ElemSet) -> ElemSet {
        self &= rhs;
        self
    }
}

impl BitAndAssign for ElemSet {
    #[inline]
    fn bitand_assign(&mut self, rhs: ElemSet) {
        for w in 0..WORDS {
            self.0[w] &= rhs.0[w];
        }
    }
}

impl BitOr for ElemSet {
    type Output = ElemSet;
    #[inline]
    fn bitor(mut self, rhs: ElemSet) -> ElemSet {
        self |= rhs;
        self
    }
}

impl BitOrAssign for ElemSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: ElemSet) {
        for w in 0..WORDS {
            self.0[w] |= rhs.0[w];
        }
    }
}

impl Sub for ElemSet {
    type Output = ElemSet;
    #[inline]
    fn sub(mut self, rhs: ElemSet) -> ElemSet {
        for w in 0..WORDS {
            self.0[w] &= !rhs.0[w];
        }
        self
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
