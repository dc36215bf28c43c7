use std::collections::BTreeMap;

use super::{ordered_pair, NodeId};
use crate::error::{Error, Result};

/// Separating set recorded per unordered pair when its edge was deleted.
///
/// Only the first set found is kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SepsetTable {
    sets: BTreeMap<(NodeId, NodeId), Vec<NodeId>>,
}

impl SepsetTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `set` for `{a, b}` unless an entry already exists.
    ///
    /// Returns whether the set was stored.
    pub fn record(&mut self, a: NodeId, b: NodeId, set: &[NodeId]) -> Result<bool> {
        if a == b || set.contains(&a) || set.contains(&b) {
            return Err(Error::InvalidQuery(format!(
                "separating set for {a}, {b} must exclude both endpoints"
            )));
        }
        let key = ordered_pair(a, b);
        if self.sets.contains_key(&key) {
            return Ok(false);
        }
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        self.sets.insert(key, set);
        Ok(true)
    }

    pub fn get(&self, a: NodeId, b: NodeId) -> Option<&[NodeId]> {
        self.sets.get(&ordered_pair(a, b)).map(Vec::as_slice)
    }

    /// `Some(true)` iff `m` is in `Sepset(a, b)`; `None` when no set is recorded.
    pub fn contains(&self, a: NodeId, b: NodeId, m: NodeId) -> Option<bool> {
        self.get(a, b).map(|s| s.binary_search(&m).is_ok())
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((NodeId, NodeId), &[NodeId])> {
        self.sets.iter().map(|(&k, v)| (k, v.as_slice()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_set_for_unordered_pair() {
        let mut t = SepsetTable::new();
        assert!(t.record(NodeId(2), NodeId(0), &[NodeId(1)]).unwrap());
        assert!(!t.record(NodeId(0), NodeId(2), &[NodeId(3)]).unwrap());
        assert_eq!(t.get(NodeId(0), NodeId(2)), Some(&[NodeId(1)][..]));
        assert_eq!(t.contains(NodeId(2), NodeId(0), NodeId(1)), Some(true));
        assert_eq!(t.contains(NodeId(2), NodeId(0), NodeId(3)), Some(false));
        assert_eq!(t.contains(NodeId(1), NodeId(0), NodeId(3)), None);
    }

    #[test]
    fn rejects_endpoint_members() {
        let mut t = SepsetTable::new();
        assert!(t.record(NodeId(0), NodeId(1), &[NodeId(1)]).is_err());
    }
}
