//! Conditional-independence queries.
//!
//! An [`IndependenceOracle`] answers "is `x` independent of `y` given `s`?"
//! over a dense variable space `0..n`. Two implementations ship: a perfect
//! oracle backed by d-separation on a known DAG, and a G² test over
//! categorical samples. Both count every query they answer.

mod dataset;
mod gsquared;
mod perfect;

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::dsep::ConditioningSet;
use crate::error::Result;
use crate::graph::NodeId;

pub use dataset::Dataset;
pub use gsquared::{g_squared, GSquaredOutcome, GSquaredTest};
pub use perfect::PerfectOracle;

pub trait IndependenceOracle: Sync {
    /// Variable names; a variable's position is its [`NodeId`].
    fn variables(&self) -> &[String];

    /// `Ok(true)` when `x` and `y` are independent given `s`.
    fn query(&self, x: NodeId, y: NodeId, s: &ConditioningSet) -> Result<bool>;

    /// Queries answered so far.
    fn stats(&self) -> OracleStats;
}

/// Query counts, in total and by conditioning-set size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStats {
    pub total: u64,
    pub by_size: BTreeMap<usize, u64>,
}

impl OracleStats {
    pub fn record(&mut self, size: usize) {
        self.total += 1;
        *self.by_size.entry(size).or_default() += 1;
    }

    /// Largest conditioning-set size queried, if any query was made.
    pub fn max_size(&self) -> Option<usize> {
        self.by_size
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&s, _)| s)
            .next_back()
    }

    /// Query count with `|S| > k`.
    pub fn mass_above(&self, k: usize) -> u64 {
        self.by_size.range((k + 1)..).map(|(_, &c)| c).sum()
    }
}

/// Thread-safe [`OracleStats`] accumulator.
#[derive(Debug, Default)]
pub struct StatsCounter(Mutex<OracleStats>);

impl StatsCounter {
    pub fn record(&self, size: usize) {
        self.0.lock().expect("stats lock poisoned").record(size);
    }

    pub fn snapshot(&self) -> OracleStats {
        self.0.lock().expect("stats lock poisoned").clone()
    }
}

pub(crate) fn check_variables(n: usize, x: NodeId, y: NodeId, s: &ConditioningSet) -> Result<()> {
    for v in [x, y].into_iter().chain(s.iter()) {
        if v.index() >= n {
            return Err(crate::error::Error::InvalidQuery(format!(
                "variable {v} out of range (0..{n})"
            )));
        }
    }
    s.check_query(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_totals_match_histogram() {
        let c = StatsCounter::default();
        for s in [0, 1, 1, 2, 0] {
            c.record(s);
        }
        let s = c.snapshot();
        assert_eq!(s.total, s.by_size.values().sum::<u64>());
        assert_eq!(s.max_size(), Some(2));
        assert_eq!(s.mass_above(1), 1);
        assert_eq!(s.mass_above(2), 0);
    }
}
