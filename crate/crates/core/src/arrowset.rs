//! Fixed-width bit vectors over the canonical arrow index space.

use std::fmt;
use std::hash::{Hash, Hasher};

const WORD_BITS: usize = 64;

/// Number of `u64` words needed for `bits` bits.
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A set of arrows, stored as a bit vector indexed by canonical arrow id.
///
/// The width is fixed by the lattice the set belongs to. Two sets are only
/// comparable when they were created for the same arrow count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArrowSet {
    len: usize,
    words: Box<[u64]>,
}

impl ArrowSet {
    pub fn empty(len: usize) -> Self {
        ArrowSet {
            len,
            words: vec![0; words_for(len)].into_boxed_slice(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(len: usize, ids: I) -> Self {
        let mut s = Self::empty(len);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Rebuilds a set from raw words; bits past `len` must be zero.
    pub fn from_words(len: usize, words: Vec<u64>) -> Option<Self> {
        if words.len() != words_for(len) {
            return None;
        }
        let s = ArrowSet {
            len,
            words: words.into_boxed_slice(),
        };
        let mut check = s.clone();
        check.clear_tail();
        (check == s).then_some(s)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Width of the index space (number of arrows in the lattice).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        debug_assert!(id < self.len);
        self.words[id / WORD_BITS] >> (id % WORD_BITS) & 1 == 1
    }

    /// Inserts `id`, returning `true` if it was not present.
    #[inline]
    pub fn insert(&mut self, id: usize) -> bool {
        debug_assert!(id < self.len);
        let w = &mut self.words[id / WORD_BITS];
        let mask = 1u64 << (id % WORD_BITS);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, id: usize) -> bool {
        let w = &mut self.words[id / WORD_BITS];
        let mask = 1u64 << (id % WORD_BITS);
        let present = *w & mask != 0;
        *w &= !mask;
        present
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ArrowSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ArrowSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ArrowSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &ArrowSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// 64-bit fingerprint used for hashing and shard selection.
    ///
    /// Equal sets have equal fingerprints; the converse is confirmed by full
    /// comparison wherever membership matters.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ self.len as u64;
        for &w in self.words.iter() {
            h = (h ^ w).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(29);
            h ^= h >> 32;
        }
        // final avalanche (splitmix64)
        h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^ (h >> 31)
    }
}

impl Hash for ArrowSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.fingerprint());
    }
}

impl fmt::Debug for ArrowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the set bits of an [`ArrowSet`], in increasing order.
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
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}
