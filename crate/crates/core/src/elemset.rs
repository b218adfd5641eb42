use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Elem;

/// Largest carrier a [`FiniteHoop`](crate::FiniteHoop) may have; subsets are single words.
pub const MAX_SIZE: usize = 64;

/// A subset of a carrier of at most [`MAX_SIZE`] elements, stored as a bit mask.
///
/// The derived `Ord` compares the masks as integers, which is the deterministic
/// "bit-set order" used to sort filters.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_SIZE);
        if n == MAX_SIZE {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: Elem) -> Self {
        ElemSet(1u64 << x)
    }

    pub fn contains(self, x: Elem) -> bool {
        x < MAX_SIZE && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: Elem) {
        self.0 |= 1u64 << x;
    }

    pub fn with(self, x: Elem) -> Self {
        ElemSet(self.0 | 1u64 << x)
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<Elem> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Elem)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as Elem;
        self.0 &= self.0 - 1;
        Some(x)
    }
}

impl IntoIterator for ElemSet {
    type Item = Elem;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<Elem>::deserialize(d)?;
        if let Some(&x) = v.iter().find(|&&x| x >= MAX_SIZE) {
            return Err(serde::de::Error::custom(format!("element {x} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_ops() {
        let a: ElemSet = [0, 2, 5].into_iter().collect();
        let b = ElemSet::singleton(2).with(3);
        assert_eq!(a.intersection(b), ElemSet::singleton(2));
        assert_eq!(a.union(b).len(), 4);
        assert!(ElemSet::singleton(5).is_subset(a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(format!("{a:?}"), "{0, 2, 5}");
    }
}
