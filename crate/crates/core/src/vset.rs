//! Fixed-universe bitsets and set families.
//!
//! A [`VertexSet`] is a subset of `0..universe_size` stored as packed 64-bit
//! words. Universes of up to 128 elements live inline; larger ones spill to
//! the heap. Set-indexed tables (closure images, lattices, generator labels)
//! enforce [`DEFAULT_MAX_UNIVERSE`] through [`check_universe`]; plain graph
//! routines accept any size.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default cap on universe sizes for set-indexed tables.
pub const DEFAULT_MAX_UNIVERSE: usize = 128;

const WORD: usize = 64;

type Words = SmallVec<[u64; 2]>;

/// Fails with [`Error::UniverseTooLarge`] if `size > limit`.
pub fn check_universe(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::UniverseTooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// A subset of `0..universe_size`.
///
/// Ordering is canonical: by cardinality first, then lexicographically on the
/// ascending member lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Words,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD)
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: SmallVec::from_elem(0, word_count(universe)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let bits = (universe - lo).min(WORD);
            *w = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn singleton(universe: usize, element: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(element);
        s
    }

    /// Builds a set from members, rejecting out-of-range elements.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for m in members {
            if m >= universe {
                return Err(Error::ElementOutOfRange {
                    element: m,
                    universe,
                });
            }
            s.insert(m);
        }
        Ok(s)
    }

    /// Builds a set from the low bits of `mask` (universe at most 64).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask conversion needs universe <= 64");
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == WORD { u64::MAX } else { (1u64 << universe) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// Low 64 bits as a mask (universe at most 64).
    pub fn to_mask(&self) -> u64 {
        assert!(self.universe <= WORD, "mask conversion needs universe <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe_size(&self) -> usize {
        self.universe
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

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element < self.universe && self.words[element / WORD] >> (element % WORD) & 1 == 1
    }

    /// Inserts `element`; returns true if it was not present.
    ///
    /// Panics if `element` is outside the universe.
    #[inline]
    pub fn insert(&mut self, element: usize) -> bool {
        assert!(
            element < self.universe,
            "element {element} outside universe 0..{}",
            self.universe
        );
        let w = &mut self.words[element / WORD];
        let bit = 1u64 << (element % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, element: usize) -> bool {
        if element >= self.universe {
            return false;
        }
        let w = &mut self.words[element / WORD];
        let bit = 1u64 << (element % WORD);
        let present = *w & bit != 0;
        *w &= !bit;
        present
    }

    /// Copy of `self` with `element` added.
    pub fn with(&self, element: usize) -> Self {
        let mut s = self.clone();
        s.insert(element);
        s
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "set operation across different universes"
        );
    }

    pub fn union_with(&mut self, other: &Self) {
        self.same_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.same_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.same_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Number of members shared with `other`.
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.same_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Members of `self` not in `other`, counted without allocating.
    pub fn difference_len(&self, other: &Self) -> usize {
        self.same_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    /// Re-embeds the members in a larger (or equal) universe.
    pub fn widen(&self, universe: usize) -> Self {
        assert!(universe >= self.universe);
        let mut s = Self::empty(universe);
        for (a, b) in s.words.iter_mut().zip(&self.words) {
            *a = *b;
        }
        s
    }

    /// Lectic comparison: `self < other` iff the smallest element of the
    /// symmetric difference belongs to `other`.
    pub fn lectic_cmp(&self, other: &Self) -> Ordering {
        self.same_universe(other);
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if (b >> bit) & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.universe)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Serialized form is a bare member list, so the universe has to be supplied
/// by the caller; this helper type carries it through `serde`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetRecord {
    pub universe: usize,
    pub members: Vec<usize>,
}

impl From<&VertexSet> for SetRecord {
    fn from(s: &VertexSet) -> Self {
        SetRecord {
            universe: s.universe,
            members: s.to_vec(),
        }
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
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

/// A list of distinct subsets of a common universe, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    universe: usize,
    sets: Vec<VertexSet>,
}

impl SetFamily {
    /// Sorts canonically and drops duplicates.
    pub fn new(universe: usize, sets: Vec<VertexSet>) -> Result<Self> {
        for s in &sets {
            if s.universe_size() != universe {
                return Err(Error::UniverseMismatch {
                    left: universe,
                    right: s.universe_size(),
                });
            }
        }
        let mut sets = sets;
        sets.sort();
        sets.dedup();
        Ok(SetFamily { universe, sets })
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.sets.iter()
    }

    pub fn into_sets(self) -> Vec<VertexSet> {
        self.sets
    }
}

/// Every subset of `0..n` in canonical (size, lexicographic) order.
///
/// Intended for small universes; the caller is responsible for the size cap.
pub fn subsets_in_canonical_order(n: usize) -> impl Iterator<Item = VertexSet> {
    (0..=n).flat_map(move |k| Combinations::new(n, k).map(move |c| VertexSet::from_members(n, c).expect("in range")))
}

/// Lexicographic k-combinations of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                break true;
            }
        };
        self.current = if advanced { Some(next) } else { None };
        Some(out)
    }
}
