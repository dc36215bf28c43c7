//! The Fr(k)CI pipeline: skeleton search with conditioning sets of at most
//! `k` variables, collider orientation, rule closure, and conversion of the
//! resulting partially oriented graph into a belief network structure.

mod discriminating;
mod extract;
mod orient;
mod skeleton;
mod trace;

pub use discriminating::{find_definite_discriminating_path, find_with_limit};
pub use extract::{extract_dag, finalize_orientations, insert_hidden};
pub use orient::{orient_colliders, orientation_closure, ClosureOptions};
pub use skeleton::skeleton_phase;
pub use trace::{format_trace, parse_trace, Rule, TraceEvent};

use crate::error::{Error, Result, Stage};
use crate::graph::{Dag, MixedGraph, SepsetTable};
use crate::independence::{IndependenceOracle, OracleStats};

/// Largest variable count accepted by [`ci_reference`].
pub const CI_REFERENCE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrkciConfig {
    /// Largest conditioning set size queried.
    pub k: usize,
    /// See [`ClosureOptions::require_triangle`].
    pub require_triangle: bool,
    /// See [`ClosureOptions::max_path_len`].
    pub max_path_len: Option<usize>,
    /// Worker threads for speculative querying; 1 queries sequentially.
    pub threads: usize,
}

impl FrkciConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            require_triangle: true,
            max_path_len: None,
            threads: 1,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    fn closure_options(&self) -> ClosureOptions {
        ClosureOptions {
            require_triangle: self.require_triangle,
            max_path_len: self.max_path_len,
        }
    }
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct FrkciResult {
    /// Partially oriented graph after the rule closure.
    pub pipg: MixedGraph,
    /// Fully oriented graph after node removal; only `->` and `<->` edges.
    pub oriented: MixedGraph,
    /// Belief network structure with a hidden node per bidirected edge.
    pub dag: Dag,
    pub sepsets: SepsetTable,
    /// Queries issued by this run, by conditioning set size.
    pub stats: OracleStats,
    /// Every mark refinement in the order it happened.
    pub trace: Vec<TraceEvent>,
}

impl FrkciResult {
    pub fn trace_text(&self) -> String {
        format_trace(&self.trace, &self.pipg)
    }
}

fn at_stage<T>(stage: Stage, trace: &[TraceEvent], r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage,
        source: Box::new(e),
        trace: trace.to_vec(),
    })
}

/// Runs the full pipeline against `oracle`.
pub fn fr_k_ci<O: IndependenceOracle + ?Sized>(oracle: &O, config: &FrkciConfig) -> Result<FrkciResult> {
    if oracle.variables().is_empty() {
        return Err(Error::InvalidParameter("no variables".into()));
    }
    let mut trace = Vec::new();
    let (mut g, sepsets, stats) = at_stage(
        Stage::Skeleton,
        &trace,
        skeleton_phase(oracle, config.k, config.threads),
    )?;
    let r = orient_colliders(&mut g, &sepsets, &mut trace);
    at_stage(Stage::Colliders, &trace, r)?;
    let r = orientation_closure(&mut g, &sepsets, &config.closure_options(), &mut trace);
    at_stage(Stage::Closure, &trace, r)?;
    let pipg = g.clone();
    let r = finalize_orientations(&mut g, &mut trace);
    at_stage(Stage::Finalize, &trace, r)?;
    let r = extract_dag(&g, &mut trace);
    let oriented = at_stage(Stage::Extract, &trace, r)?;
    let dag = at_stage(Stage::InsertHidden, &trace, insert_hidden(&oriented))?;
    Ok(FrkciResult {
        pipg,
        oriented,
        dag,
        sepsets,
        stats,
        trace,
    })
}

/// Unrestricted variant: every conditioning set size up to `n - 2`.
/// Returns the partially oriented graph. Only for small variable counts.
pub fn ci_reference<O: IndependenceOracle + ?Sized>(oracle: &O) -> Result<MixedGraph> {
    let n = oracle.variables().len();
    if n > CI_REFERENCE_LIMIT {
        return Err(Error::SizeGuard {
            what: "variables for ci_reference",
            actual: n,
            limit: CI_REFERENCE_LIMIT,
        });
    }
    Ok(fr_k_ci(oracle, &FrkciConfig::new(n.saturating_sub(2)))?.pipg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsep::d_separated;
    use crate::graph::EndpointMark::{self, *};
    use crate::graph::NodeId;
    use crate::graph::Visibility::{Hidden, Visible};
    use crate::independence::PerfectOracle;
    use crate::ipg::{build_rk_ipg, rk_skeleton};
    use crate::random::suite_dag;

    fn chain() -> Dag {
        Dag::from_names(
            [("A", Visible), ("B", Visible), ("C", Visible)],
            [("A", "B"), ("B", "C")],
        )
        .unwrap()
    }

    fn edge_pairs(g: &MixedGraph) -> Vec<(usize, usize)> {
        g.edges().iter().map(|e| (e.a.0, e.b.0)).collect()
    }

    #[test]
    fn chain_recovers_an_equivalent_structure() {
        let truth = chain();
        let res = fr_k_ci(&PerfectOracle::new(truth.clone()), &FrkciConfig::new(1)).unwrap();
        assert_eq!(edge_pairs(&res.oriented), vec![(0, 1), (1, 2)]);
        assert_eq!(res.dag.hidden_nodes().len(), 0);
        // no collider at B, so A and C must stay separated by B
        let (a, b, c) = (NodeId(0), NodeId(1), NodeId(2));
        assert!(d_separated(&res.dag, a, c, &[b].into_iter().collect()).unwrap());
        assert!(!d_separated(&res.dag, a, c, &Default::default()).unwrap());
        assert!(!res.oriented.is_collider(a, b, c).unwrap());
    }

    #[test]
    fn confounded_pair_gets_hidden_node() {
        let truth = Dag::from_names(
            [("H", Hidden), ("A", Visible), ("B", Visible), ("C", Visible), ("D", Visible)],
            [("H", "A"), ("H", "B"), ("C", "A"), ("D", "B")],
        )
        .unwrap();
        let res = fr_k_ci(&PerfectOracle::new(truth), &FrkciConfig::new(2)).unwrap();
        let (a, b) = (res.oriented.require("A").unwrap(), res.oriented.require("B").unwrap());
        assert!(res.oriented.edge(a, b).unwrap().is_bidirected());
        let h = res.dag.require("H_A_B").unwrap();
        assert!(res.dag.is_hidden(h));
        assert_eq!(res.dag.children(h), [a, b]);
        assert!(res.dag.has_edge(res.dag.require("C").unwrap(), a));
        assert!(res.dag.has_edge(res.dag.require("D").unwrap(), b));
    }

    #[test]
    fn chain_reference_matches_k1() {
        let o = PerfectOracle::new(chain());
        let reference = ci_reference(&o).unwrap();
        let fast = fr_k_ci(&o, &FrkciConfig::new(1)).unwrap();
        assert_eq!(reference, fast.pipg);
    }

    #[test]
    fn reference_guard() {
        let names: Vec<String> = (0..11).map(|i| format!("V{i}")).collect();
        let dag = Dag::from_names(names.iter().map(|n| (n.as_str(), Visible)), []).unwrap();
        assert!(matches!(
            ci_reference(&PerfectOracle::new(dag)),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn skeleton_equals_rk_ipg_adjacencies() {
        for seed in 0..60 {
            let g = suite_dag(seed);
            for k in 0..=2 {
                let (skel, _, _) = skeleton_phase(&PerfectOracle::new(g.clone()), k, 1).unwrap();
                assert_eq!(edge_pairs(&skel), edge_pairs(&rk_skeleton(&g, k)), "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn definite_marks_agree_with_rk_ipg() {
        for seed in 0..60 {
            let g = suite_dag(seed);
            for k in 0..=2 {
                let truth = build_rk_ipg(&g, k).unwrap();
                let truth = truth.graph();
                let res = fr_k_ci(&PerfectOracle::new(g.clone()), &FrkciConfig::new(k)).unwrap();
                for e in res.pipg.edges() {
                    for (at, other) in [(e.a, e.b), (e.b, e.a)] {
                        let mark = res.pipg.mark_at(at, other).unwrap();
                        if mark != Circle {
                            assert_eq!(truth.mark_at(at, other), Some(mark), "seed {seed} k {k}");
                        }
                    }
                }
                for (a, b, c) in res.pipg.constraints() {
                    assert!(!truth.is_collider(a, b, c).unwrap(), "seed {seed} k {k}");
                }
            }
        }
    }

    #[test]
    fn trace_justifies_every_definite_mark_once() {
        for seed in 0..40 {
            let g = suite_dag(seed);
            let res = fr_k_ci(&PerfectOracle::new(g), &FrkciConfig::new(2)).unwrap();
            let mut count = std::collections::HashMap::new();
            for ev in &res.trace {
                *count.entry((ev.at, ev.other)).or_insert(0) += 1;
            }
            for e in res.oriented.edges() {
                for (at, other) in [(e.a, e.b), (e.b, e.a)] {
                    let m: EndpointMark = res.oriented.mark_at(at, other).unwrap();
                    assert_ne!(m, Circle);
                    assert_eq!(count.get(&(at, other)), Some(&1), "seed {seed}");
                }
            }
            assert_eq!(count.len(), res.trace.len());
            assert_eq!(parse_trace(&res.trace_text(), &res.pipg).unwrap(), res.trace);
        }
    }

    #[test]
    fn deterministic_and_bounded() {
        for seed in 0..30 {
            let g = suite_dag(seed);
            for k in 0..=2 {
                let first = fr_k_ci(&PerfectOracle::new(g.clone()), &FrkciConfig::new(k)).unwrap();
                let second = fr_k_ci(&PerfectOracle::new(g.clone()), &FrkciConfig::new(k)).unwrap();
                assert_eq!(first, second);
                assert_eq!(first.stats.mass_above(k), 0);
                let par = fr_k_ci(
                    &PerfectOracle::new(g.clone()),
                    &FrkciConfig::new(k).with_threads(3),
                )
                .unwrap();
                assert_eq!(par.dag, first.dag);
                assert_eq!(par.trace, first.trace);
            }
        }
    }

    #[test]
    fn stage_errors_carry_the_trace() {
        // star around B: A, C, D pairwise separated, C and D only given B
        struct Contradictory;
        impl IndependenceOracle for Contradictory {
            fn variables(&self) -> &[String] {
                static NAMES: std::sync::OnceLock<Vec<String>> = std::sync::OnceLock::new();
                NAMES.get_or_init(|| vec!["A".into(), "B".into(), "C".into(), "D".into()])
            }
            fn query(&self, x: NodeId, y: NodeId, s: &crate::dsep::ConditioningSet) -> Result<bool> {
                let pair = (x.0.min(y.0), x.0.max(y.0));
                Ok(match pair {
                    (0, 2) | (0, 3) => s.is_empty(),
                    (2, 3) => s.as_slice() == [NodeId(1)],
                    _ => false,
                })
            }
            fn stats(&self) -> OracleStats {
                OracleStats::default()
            }
        }
        // colliders A -> B <- C and A -> B <- D contradict the non-collider C - B - D
        let err = fr_k_ci(&Contradictory, &FrkciConfig::new(1)).unwrap_err();
        match err {
            Error::Stage { stage, trace, .. } => {
                assert_eq!(stage, Stage::Colliders);
                assert!(!trace.is_empty());
            }
            other => panic!("unexpected {other}"),
        }
    }
}
