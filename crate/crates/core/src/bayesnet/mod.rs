//! Discrete Bayesian networks: validated CPTs, ancestral sampling, random
//! parameters and a JSON document format.

mod io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::graph::{Dag, NodeId};
use crate::independence::Dataset;

pub use io::{load_network, save_network};

/// Tolerance on CPT row sums.
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// Floor applied to randomly drawn probabilities before renormalising.
pub const PROBABILITY_FLOOR: f64 = 1e-3;

/// A DAG with named states and one conditional probability table per node.
///
/// `parents[v]` fixes the enumeration of parent configurations: row `r` of
/// `cpt[v]` belongs to the configuration whose last parent varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBayesNet {
    dag: Dag,
    states: Vec<Vec<String>>,
    parents: Vec<Vec<NodeId>>,
    cpts: Vec<Vec<Vec<f64>>>,
}

impl DiscreteBayesNet {
    /// Builds and validates a network. `parents[v]` must be a permutation of
    /// the DAG parents of `v`.
    pub fn new(
        dag: Dag,
        states: Vec<Vec<String>>,
        parents: Vec<Vec<NodeId>>,
        cpts: Vec<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        let n = dag.node_count();
        if states.len() != n || parents.len() != n || cpts.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} state lists, parent lists and tables"
            )));
        }
        let bn = Self {
            dag,
            states,
            parents,
            cpts,
        };
        for v in bn.dag.nodes() {
            bn.validate(v)?;
        }
        Ok(bn)
    }

    fn invalid(&self, v: NodeId, reason: String) -> Error {
        Error::InvalidCpt {
            node: self.dag.name(v).to_string(),
            reason,
        }
    }

    fn validate(&self, v: NodeId) -> Result<()> {
        let card = self.states[v.index()].len();
        if card == 0 {
            return Err(self.invalid(v, "no states".into()));
        }
        let mut declared = self.parents[v.index()].clone();
        declared.sort();
        if declared != self.dag.parents(v) {
            return Err(self.invalid(v, "parent list does not match the graph".into()));
        }
        let rows = self.configurations(v);
        let cpt = &self.cpts[v.index()];
        if cpt.len() != rows {
            return Err(self.invalid(v, format!("{} rows, expected {rows}", cpt.len())));
        }
        for (r, row) in cpt.iter().enumerate() {
            if row.len() != card {
                return Err(self.invalid(v, format!("row {r} has {} entries, expected {card}", row.len())));
            }
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(self.invalid(v, format!("row {r} has a negative or non-finite entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                return Err(self.invalid(v, format!("row {r} sums to {sum}")));
            }
        }
        Ok(())
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn states(&self, v: NodeId) -> &[String] {
        &self.states[v.index()]
    }

    pub fn cardinality(&self, v: NodeId) -> usize {
        self.states[v.index()].len()
    }

    /// Parents of `v` in table order.
    pub fn parents(&self, v: NodeId) -> &[NodeId] {
        &self.parents[v.index()]
    }

    pub fn cpt(&self, v: NodeId) -> &[Vec<f64>] {
        &self.cpts[v.index()]
    }

    /// Number of parent configurations of `v`.
    pub fn configurations(&self, v: NodeId) -> usize {
        self.parents[v.index()]
            .iter()
            .map(|&p| self.cardinality(p))
            .product()
    }

    /// CPT row index for the parent states found in `assignment`.
    pub fn row_index(&self, v: NodeId, assignment: &[u32]) -> usize {
        self.parents[v.index()].iter().fold(0, |acc, &p| {
            acc * self.cardinality(p) + assignment[p.index()] as usize
        })
    }

    /// Probability of a complete assignment of every node.
    pub fn joint_probability(&self, assignment: &[u32]) -> f64 {
        self.dag
            .nodes()
            .map(|v| self.cpts[v.index()][self.row_index(v, assignment)][assignment[v.index()] as usize])
            .product()
    }
}

/// `n` rows of ancestral samples; hidden columns are dropped.
pub fn forward_sample(bn: &DiscreteBayesNet, n: usize, seed: u64) -> Result<Dataset> {
    let dag = bn.dag();
    let visible = dag.visible_nodes();
    let mut data = Dataset::new(
        visible.iter().map(|&v| dag.name(v).to_string()).collect(),
        visible.iter().map(|&v| bn.states(v).to_vec()).collect(),
    )?;
    let order = dag.topological_order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0u32; dag.node_count()];
    let mut row = vec![0u32; visible.len()];
    for _ in 0..n {
        for &v in &order {
            let probs = &bn.cpt(v)[bn.row_index(v, &assignment)];
            let u: f64 = rng.random();
            let mut acc = 0.0;
            // falls back to the last positive state when rounding leaves u above the total
            let mut state = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
            for (s, &p) in probs.iter().enumerate() {
                acc += p;
                if u < acc {
                    state = s;
                    break;
                }
            }
            assignment[v.index()] = state as u32;
        }
        for (cell, &v) in row.iter_mut().zip(&visible) {
            *cell = assignment[v.index()];
        }
        data.push_row(&row)?;
    }
    Ok(data)
}

/// Random binary parameters; see [`random_parameters_with_states`].
pub fn random_parameters(dag: &Dag, seed: u64, concentration: f64) -> Result<DiscreteBayesNet> {
    random_parameters_with_states(dag, &vec![2; dag.node_count()], seed, concentration)
}

/// CPT rows drawn from a symmetric Dirichlet, floored at
/// [`PROBABILITY_FLOOR`] and renormalised. States are named `"0"`, `"1"`, ..
/// and parents are taken in ascending index order.
pub fn random_parameters_with_states(
    dag: &Dag,
    cardinalities: &[usize],
    seed: u64,
    concentration: f64,
) -> Result<DiscreteBayesNet> {
    if !(concentration > 0.0 && concentration.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "concentration must be positive, got {concentration}"
        )));
    }
    if cardinalities.len() != dag.node_count() || cardinalities.contains(&0) {
        return Err(Error::InvalidParameter(
            "one positive state count per node required".into(),
        ));
    }
    let gamma = Gamma::new(concentration, 1.0)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<Vec<String>> = cardinalities
        .iter()
        .map(|&c| (0..c).map(|s| s.to_string()).collect())
        .collect();
    let parents: Vec<Vec<NodeId>> = dag.nodes().map(|v| dag.parents(v).to_vec()).collect();
    let mut cpts = Vec::with_capacity(dag.node_count());
    for v in dag.nodes() {
        let rows: usize = parents[v.index()].iter().map(|p| cardinalities[p.index()]).product();
        let card = cardinalities[v.index()];
        let table = (0..rows)
            .map(|_| {
                let draw: Vec<f64> = (0..card).map(|_| gamma.sample(&mut rng)).collect();
                let total: f64 = draw.iter().sum();
                let row: Vec<f64> = if total > 0.0 {
                    draw.iter().map(|x| (x / total).max(PROBABILITY_FLOOR)).collect()
                } else {
                    vec![1.0; card]
                };
                let total: f64 = row.iter().sum();
                row.into_iter().map(|x| x / total).collect()
            })
            .collect();
        cpts.push(table);
    }
    DiscreteBayesNet::new(dag.clone(), states, parents, cpts)
}
