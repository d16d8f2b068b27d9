//! Dense membership sets over graph identifiers.

use std::fmt;
use std::marker::PhantomData;

/// An identifier that is dense in `[0, universe)`.
pub trait DenseId: Copy + Eq + Ord {
    fn index(self) -> usize;
    fn from_index(index: usize) -> Self;
}

/// A fixed-universe set with O(1) membership tests.
///
/// The universe is pinned at construction; inserting an id outside it is a
/// logic error and panics.
#[derive(Clone, PartialEq, Eq)]
pub struct IdSet<I> {
    member: Vec<bool>,
    len: usize,
    _ids: PhantomData<I>,
}

impl<I: DenseId> IdSet<I> {
    pub fn new(universe: usize) -> Self {
        IdSet {
            member: vec![false; universe],
            len: 0,
            _ids: PhantomData,
        }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = I>) -> Self {
        let mut set = Self::new(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Size of the universe, not the set.
    pub fn universe(&self) -> usize {
        self.member.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, id: I) -> bool {
        self.member[id.index()]
    }

    /// Returns true if `id` was not already present.
    pub fn insert(&mut self, id: I) -> bool {
        let slot = &mut self.member[id.index()];
        let fresh = !*slot;
        *slot = true;
        self.len += fresh as usize;
        fresh
    }

    /// Returns true if `id` was present.
    pub fn remove(&mut self, id: I) -> bool {
        let slot = &mut self.member[id.index()];
        let hit = *slot;
        *slot = false;
        self.len -= hit as usize;
        hit
    }

    pub fn clear(&mut self) {
        self.member.fill(false);
        self.len = 0;
    }

    /// Members in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = I> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| I::from_index(i))
    }

    /// Canonical form: the sorted id sequence.
    pub fn to_sorted_vec(&self) -> Vec<I> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &IdSet<I>) -> bool {
        debug_assert_eq!(self.universe(), other.universe());
        self.member
            .iter()
            .zip(&other.member)
            .all(|(&a, &b)| !a || b)
    }

    pub fn extend(&mut self, ids: impl IntoIterator<Item = I>) {
        for id in ids {
            self.insert(id);
        }
    }
}

impl<I: DenseId + fmt::Debug> fmt::Debug for IdSet<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
