use serde::{Deserialize, Serialize};

use super::DiscreteBayesNet;
use crate::error::{Error, Result};
use crate::graph::{Dag, NodeId, Visibility};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    nodes: Vec<NodeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    name: String,
    #[serde(default)]
    hidden: bool,
    states: Vec<String>,
    #[serde(default)]
    parents: Vec<String>,
    cpt: Vec<Vec<f64>>,
}

/// Parses a network document: `{"nodes": [{name, hidden, states, parents, cpt}, ..]}`.
pub fn load_network(text: &str) -> Result<DiscreteBayesNet> {
    let doc: Document = serde_json::from_str(text)?;
    let mut dag = Dag::new();
    for n in &doc.nodes {
        let vis = if n.hidden {
            Visibility::Hidden
        } else {
            Visibility::Visible
        };
        dag.add_node(n.name.clone(), vis)?;
    }
    let mut parents = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.iter().enumerate() {
        let mut ps = Vec::with_capacity(n.parents.len());
        for p in &n.parents {
            let pid = dag.node(p).ok_or_else(|| {
                Error::InvalidData(format!("node `{}` lists unknown parent `{p}`", n.name))
            })?;
            dag.add_edge(pid, NodeId(i))?;
            ps.push(pid);
        }
        parents.push(ps);
    }
    let states = doc.nodes.iter().map(|n| n.states.clone()).collect();
    let cpts = doc.nodes.into_iter().map(|n| n.cpt).collect();
    DiscreteBayesNet::new(dag, states, parents, cpts)
}

/// Serialises `bn` as a pretty-printed network document.
pub fn save_network(bn: &DiscreteBayesNet) -> Result<String> {
    let dag = bn.dag();
    let nodes = dag
        .nodes()
        .map(|v| NodeDoc {
            name: dag.name(v).to_string(),
            hidden: dag.is_hidden(v),
            states: bn.states(v).to_vec(),
            parents: bn.parents(v).iter().map(|&p| dag.name(p).to_string()).collect(),
            cpt: bn.cpt(v).to_vec(),
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&Document { nodes })?;
    text.push('\n');
    Ok(text)
}
