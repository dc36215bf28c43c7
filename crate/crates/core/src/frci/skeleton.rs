use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::dsep::ConditioningSet;
use crate::error::Result;
use crate::graph::{MixedGraph, NodeId, SepsetTable};
use crate::independence::{IndependenceOracle, OracleStats, StatsCounter};
use crate::subsets::Subsets;

/// Candidate sets evaluated together when querying speculatively.
const SPECULATIVE_BATCH: usize = 32;

struct Searcher<'a, O: ?Sized> {
    oracle: &'a O,
    counter: StatsCounter,
    pool: Option<rayon::ThreadPool>,
    // candidate sets already queried, per edge
    tried: HashMap<(NodeId, NodeId), HashSet<Vec<NodeId>>>,
}

fn ask<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    counter: &StatsCounter,
    a: NodeId,
    b: NodeId,
    s: &[NodeId],
) -> Result<bool> {
    counter.record(s.len());
    oracle.query(a, b, &ConditioningSet::from(s))
}

impl<O: IndependenceOracle + ?Sized> Searcher<'_, O> {
    /// First untried candidate that separates `a` and `b`, in candidate order.
    fn first_separator(
        &mut self,
        a: NodeId,
        b: NodeId,
        candidates: impl Iterator<Item = Vec<NodeId>>,
    ) -> Result<Option<Vec<NodeId>>> {
        let Searcher {
            oracle,
            counter,
            pool,
            tried,
        } = self;
        let tried = tried.entry((a, b)).or_default();
        let mut fresh = candidates.filter(|s| tried.insert(s.clone()));
        match pool {
            None => {
                for s in fresh {
                    if ask(*oracle, counter, a, b, &s)? {
                        return Ok(Some(s));
                    }
                }
                Ok(None)
            }
            Some(pool) => loop {
                let batch: Vec<Vec<NodeId>> = fresh.by_ref().take(SPECULATIVE_BATCH).collect();
                if batch.is_empty() {
                    return Ok(None);
                }
                let verdicts: Vec<Result<bool>> = pool.install(|| {
                    batch
                        .par_iter()
                        .map(|s| ask(*oracle, counter, a, b, s))
                        .collect()
                });
                for (s, v) in batch.into_iter().zip(verdicts) {
                    if v? {
                        return Ok(Some(s));
                    }
                }
            },
        }
    }
}

/// Steps A to B'': complete graph, neighbourhood-restricted deletion for
/// `|S| = 0..=k`, then a full search over all variables for `1 <= |S| <= k`.
///
/// With `threads > 1` candidate sets are queried speculatively in fixed-size
/// batches; the outcome is unchanged but more queries may be counted.
pub fn skeleton_phase<O: IndependenceOracle + ?Sized>(
    oracle: &O,
    k: usize,
    threads: usize,
) -> Result<(MixedGraph, SepsetTable, OracleStats)> {
    let vars = oracle.variables().to_vec();
    let n = vars.len();
    let mut g = MixedGraph::complete(vars)?;
    let mut sepsets = SepsetTable::new();
    let pool = if threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| crate::error::Error::InvalidParameter(e.to_string()))?,
        )
    } else {
        None
    };
    let mut search = Searcher {
        oracle,
        counter: StatsCounter::default(),
        pool,
        tried: HashMap::new(),
    };

    for j in 0..=k {
        let edges: Vec<(NodeId, NodeId)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
        for (a, b) in edges {
            let adj_a: Vec<NodeId> = g.neighbors(a).filter(|&v| v != b).collect();
            let adj_b: Vec<NodeId> = g.neighbors(b).filter(|&v| v != a).collect();
            if adj_a.len() < j && adj_b.len() < j {
                continue;
            }
            let candidates = Subsets::of_size(&adj_a, j).chain(Subsets::of_size(&adj_b, j));
            if let Some(s) = search.first_separator(a, b, candidates)? {
                g.remove_edge(a, b);
                sepsets.record(a, b, &s)?;
            }
        }
    }

    if k >= 1 {
        let edges: Vec<(NodeId, NodeId)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
        for (a, b) in edges {
            let rest: Vec<NodeId> = (0..n).map(NodeId).filter(|&v| v != a && v != b).collect();
            if let Some(s) = search.first_separator(a, b, Subsets::sizes(&rest, 1, k))? {
                g.remove_edge(a, b);
                sepsets.record(a, b, &s)?;
            }
        }
    }

    Ok((g, sepsets, search.counter.snapshot()))
}
