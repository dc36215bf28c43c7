use super::{check_variables, IndependenceOracle, OracleStats, StatsCounter};
use crate::dsep::{d_separated, ConditioningSet};
use crate::error::Result;
use crate::graph::{Dag, NodeId};

/// Answers queries by d-separation in a known DAG.
///
/// The variable space is the DAG's visible nodes in ascending index order,
/// so hidden nodes can never be queried or conditioned on.
#[derive(Debug)]
pub struct PerfectOracle {
    dag: Dag,
    visible: Vec<NodeId>,
    names: Vec<String>,
    stats: StatsCounter,
}

impl PerfectOracle {
    pub fn new(dag: Dag) -> Self {
        let visible = dag.visible_nodes();
        let names = visible.iter().map(|&v| dag.name(v).to_string()).collect();
        Self {
            dag,
            visible,
            names,
            stats: StatsCounter::default(),
        }
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    /// DAG node behind variable `var`.
    pub fn dag_node(&self, var: NodeId) -> NodeId {
        self.visible[var.index()]
    }
}

impl IndependenceOracle for PerfectOracle {
    fn variables(&self) -> &[String] {
        &self.names
    }

    fn query(&self, x: NodeId, y: NodeId, s: &ConditioningSet) -> Result<bool> {
        check_variables(self.names.len(), x, y, s)?;
        self.stats.record(s.len());
        let s: ConditioningSet = s.iter().map(|v| self.visible[v.index()]).collect();
        d_separated(&self.dag, self.visible[x.index()], self.visible[y.index()], &s)
    }

    fn stats(&self) -> OracleStats {
        self.stats.snapshot()
    }
}
