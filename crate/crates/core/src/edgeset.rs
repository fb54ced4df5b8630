use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::EdgeId;

/// A set of edge ids backed by a bitset sized to the owning graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl EdgeSet {
    pub fn new(universe: usize) -> Self {
        EdgeSet {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(universe: usize, ids: I) -> Self {
        let mut set = EdgeSet::new(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    /// Builds the set from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask form only covers 64 edges");
        let mut set = EdgeSet::new(universe);
        if universe > 0 {
            set.blocks[0] = mask;
        }
        set
    }

    pub fn full(universe: usize) -> Self {
        EdgeSet::from_ids(universe, 0..universe)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, id: EdgeId) -> bool {
        assert!(id < self.universe, "edge id {id} outside universe {}", self.universe);
        let (b, bit) = (id / 64, 1u64 << (id % 64));
        let fresh = self.blocks[b] & bit == 0;
        self.blocks[b] |= bit;
        fresh
    }

    pub fn remove(&mut self, id: EdgeId) -> bool {
        if id >= self.universe {
            return false;
        }
        let (b, bit) = (id / 64, 1u64 << (id % 64));
        let present = self.blocks[b] & bit != 0;
        self.blocks[b] &= !bit;
        present
    }

    pub fn toggle(&mut self, id: EdgeId) {
        assert!(id < self.universe, "edge id {id} outside universe {}", self.universe);
        self.blocks[id / 64] ^= 1u64 << (id % 64);
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        id < self.universe && self.blocks[id / 64] & (1u64 << (id % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + tz)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    fn zip_with(&self, other: &EdgeSet, op: impl Fn(u64, u64) -> u64) -> EdgeSet {
        assert_eq!(self.universe, other.universe, "edge sets over different graphs");
        EdgeSet {
            universe: self.universe,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(&a, &b)| op(a, b)).collect(),
        }
    }
}

// Lexicographic on the increasing id sequence, so {0, 2} < {0, 3} < {1}.
impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iterate_across_blocks() {
        let set = EdgeSet::from_ids(130, [129, 3, 64, 3]);
        assert_eq!(set.to_vec(), vec![3, 64, 129]);
        assert_eq!(set.len(), 3);
        assert!(set.contains(64));
        assert!(!set.contains(65));
        assert!(!set.contains(500));
    }

    #[test]
    fn lexicographic_order() {
        let a = EdgeSet::from_ids(4, [0, 2]);
        let b = EdgeSet::from_ids(4, [1, 3]);
        let c = EdgeSet::from_ids(4, [0, 3]);
        let mut v = vec![b.clone(), c.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, c, b]);
    }

    #[test]
    fn set_algebra() {
        let a = EdgeSet::from_ids(5, [0, 1, 2]);
        let b = EdgeSet::from_ids(5, [2, 3]);
        assert_eq!(a.symmetric_difference(&b).to_vec(), vec![0, 1, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert!(EdgeSet::from_ids(5, [2]).is_subset(&b));
        assert_eq!(EdgeSet::from_mask(5, 0b10101).to_vec(), vec![0, 2, 4]);
    }
}
