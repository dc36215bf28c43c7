//! Size-ascending, lexicographic subset enumeration.

use crate::graph::NodeId;

/// Iterator over subsets of `items`, by size from `min` to `max` inclusive;
/// within one size, subsets come in lexicographic order of positions.
pub struct Subsets<'a> {
    items: &'a [NodeId],
    size: usize,
    max: usize,
    // positions of the current combination; None once exhausted for `size`
    idx: Option<Vec<usize>>,
}

impl<'a> Subsets<'a> {
    pub fn sizes(items: &'a [NodeId], min: usize, max: usize) -> Self {
        let max = max.min(items.len());
        let idx = (min <= max).then(|| (0..min).collect());
        Self {
            items,
            size: min,
            max,
            idx,
        }
    }

    pub fn of_size(items: &'a [NodeId], size: usize) -> Self {
        if size > items.len() {
            return Self {
                items,
                size,
                max: 0,
                idx: None,
            };
        }
        Self::sizes(items, size, size)
    }

    pub fn up_to(items: &'a [NodeId], max: usize) -> Self {
        Self::sizes(items, 0, max)
    }
}

impl Iterator for Subsets<'_> {
    type Item = Vec<NodeId>;

    fn next(&mut self) -> Option<Vec<NodeId>> {
        let idx = self.idx.as_mut()?;
        let out = idx.iter().map(|&i| self.items[i]).collect();
        let n = self.items.len();
        let k = idx.len();
        // advance to the next combination of the same size, or the next size
        let mut i = k;
        loop {
            if i == 0 {
                self.size += 1;
                self.idx = (self.size <= self.max).then(|| (0..self.size).collect());
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in (i + 1)..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
