//! The ALARM monitoring network (37 nodes, 46 arcs) as a benchmark.
//!
//! Only the structure is standard. The bundled parameters are binary and
//! drawn by [`random_parameters`] with [`ALARM_PARAMETER_SEED`].

use crate::bayesnet::{load_network, random_parameters, DiscreteBayesNet};
use crate::error::{Error, Result};
use crate::graph::{Dag, Visibility};

/// Structure in `[node|parent:parent]` model-string notation.
pub const ALARM_MODEL: &str = "[HIST|LVF][CVP|LVV][PCWP|LVV][HYP][LVV|HYP:LVF][LVF]\
[STKV|HYP:LVF][ERLO][HRBP|ERLO:HR][HREK|ERCA:HR][ERCA][HRSA|ERCA:HR][ANES][APL]\
[TPR|APL][ECO2|ACO2:VLNG][KINK][MINV|INT:VLNG][FIO2][PVS|FIO2:VALV][SAO2|PVS:SHNT]\
[PAP|PMB][PMB][SHNT|INT:PMB][INT][PRSS|INT:KINK:VTUB][DISC][MVS][VMCH|MVS]\
[VTUB|DISC:VMCH][VLNG|INT:KINK:VTUB][VALV|INT:VLNG][ACO2|VALV][CCHL|ACO2:ANES:SAO2:TPR]\
[HR|CCHL][CO|HR:STKV][BP|CO:TPR]";

pub const ALARM_PARAMETER_SEED: u64 = 1;
pub const ALARM_CONCENTRATION: f64 = 1.0;

const ALARM_JSON: &str = include_str!("../assets/alarm.json");

/// Parses a `[node|parent:parent]..` model string; nodes keep their order of appearance.
pub fn parse_model_string(model: &str) -> Result<Dag> {
    let body = model.trim();
    let inner = body
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidData("model string must be bracketed".into()))?;
    let entries: Vec<(&str, Vec<&str>)> = inner
        .split("][")
        .map(|e| match e.split_once('|') {
            Some((node, ps)) => (node, ps.split(':').collect()),
            None => (e, Vec::new()),
        })
        .collect();
    let mut dag = Dag::new();
    for (node, _) in &entries {
        dag.add_node(*node, Visibility::Visible)?;
    }
    for (node, parents) in &entries {
        let child = dag.require(node)?;
        for p in parents {
            dag.add_edge(dag.require(p)?, child)?;
        }
    }
    Ok(dag)
}

pub fn alarm_dag() -> Dag {
    parse_model_string(ALARM_MODEL).expect("bundled model string is valid")
}

/// The bundled network document.
pub fn alarm_json() -> &'static str {
    ALARM_JSON
}

pub fn alarm_network() -> DiscreteBayesNet {
    load_network(ALARM_JSON).expect("bundled network is valid")
}

/// Regenerates the bundled network from the structure and the pinned seed.
pub fn generate_alarm_network() -> Result<DiscreteBayesNet> {
    random_parameters(&alarm_dag(), ALARM_PARAMETER_SEED, ALARM_CONCENTRATION)
}
