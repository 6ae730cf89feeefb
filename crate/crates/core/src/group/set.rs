use std::fmt;

use super::GroupSpec;
use crate::error::{Error, Result};

/// A subset of a group, stored as a bitset over element indices.
#[derive(Clone)]
pub struct GroupSet {
    group: GroupSpec,
    bits: Vec<u64>,
    card: usize,
}

impl GroupSet {
    pub fn empty(group: &GroupSpec) -> Self {
        GroupSet { group: group.clone(), bits: vec![0; group.order().div_ceil(64)], card: 0 }
    }

    pub fn full(group: &GroupSpec) -> Self {
        let mut s = Self::empty(group);
        for x in group.elements() {
            s.insert(x);
        }
        s
    }

    pub fn from_indices(group: &GroupSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(group);
        for x in indices {
            if x >= group.order() {
                return Err(Error::InvalidArgument(format!(
                    "element index {x} out of range for group of order {}",
                    group.order()
                )));
            }
            s.insert(x);
        }
        Ok(s)
    }

    /// Builds a set from a u64 mask (groups of order at most 64).
    /// Bits at or above n are ignored.
    pub fn from_mask(group: &GroupSpec, mask: u64) -> Self {
        assert!(group.order() <= 64);
        let mut s = Self::empty(group);
        let n = group.order();
        let mask = if n >= 64 { mask } else { mask & ((1u64 << n) - 1) };
        if !s.bits.is_empty() {
            s.bits[0] = mask;
        }
        s.card = mask.count_ones() as usize;
        s
    }

    pub fn from_predicate(group: &GroupSpec, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(group);
        for x in group.elements() {
            if pred(x) {
                s.insert(x);
            }
        }
        s
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.group.order() && self.bits[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let w = &mut self.bits[x / 64];
        let fresh = *w >> (x % 64) & 1 == 0;
        *w |= 1 << (x % 64);
        self.card += usize::from(fresh);
        fresh
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let w = &mut self.bits[x / 64];
        let present = *w >> (x % 64) & 1 == 1;
        *w &= !(1 << (x % 64));
        self.card -= usize::from(present);
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Low 64 bits of the membership mask.
    pub fn mask(&self) -> u64 {
        assert!(self.group.order() <= 64);
        self.bits.first().copied().unwrap_or(0)
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    fn check_same(&self, other: &GroupSet) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn zip_with(&self, other: &GroupSet, f: impl Fn(u64, u64) -> u64) -> Result<GroupSet> {
        self.check_same(other)?;
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        let card = bits.iter().map(|w| w.count_ones() as usize).sum();
        Ok(GroupSet { group: self.group.clone(), bits, card })
    }

    pub fn union(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GroupSet) -> Result<GroupSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &GroupSet) -> bool {
        self.group == other.group && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    pub fn complement(&self) -> GroupSet {
        GroupSet::from_predicate(&self.group, |x| !self.contains(x))
    }

    pub fn translate(&self, g: usize) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.add(x, g));
        }
        out
    }

    pub fn negate(&self) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.neg(x));
        }
        out
    }

    /// `k·A = {k·a}` for an integer `k`.
    pub fn dilate(&self, k: i64) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.mul(k, x));
        }
        out
    }

    pub fn sumset(&self, other: &GroupSet) -> Result<GroupSet> {
        self.check_same(other)?;
        let mut out = GroupSet::empty(&self.group);
        for a in self.iter() {
            for b in other.iter() {
                out.insert(self.group.add(a, b));
            }
        }
        Ok(out)
    }

    pub fn difference_set(&self, other: &GroupSet) -> Result<GroupSet> {
        self.sumset(&other.negate())
    }
}

impl PartialEq for GroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.bits == other.bits
    }
}

impl Eq for GroupSet {}

impl fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.group, self.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_tracks_bits() {
        let g = GroupSpec::cyclic(130);
        let mut s = GroupSet::empty(&g);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(129);
        s.insert(64);
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![3, 64, 129]);
        assert!(s.remove(64));
        assert!(!s.remove(64));
        assert_eq!(s.len(), 2);
        assert!(GroupSet::from_indices(&g, [130]).is_err());
    }

    #[test]
    fn sumset_and_translates() {
        let g = GroupSpec::cyclic(7);
        let a = GroupSet::from_indices(&g, [1, 2, 3]).unwrap();
        assert_eq!(a.sumset(&a).unwrap().to_vec(), vec![2, 3, 4, 5, 6]);
        assert_eq!(a.translate(5).to_vec(), vec![0, 1, 6]);
        assert_eq!(a.dilate(2).to_vec(), vec![2, 4, 6]);
        assert_eq!(a.difference_set(&a).unwrap().len(), 5);
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = GroupSet::empty(&GroupSpec::cyclic(6));
        let b = GroupSet::empty(&"2x3".parse().unwrap());
        assert!(a.union(&b).is_err());
    }
}
