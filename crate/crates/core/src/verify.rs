//! Structural and independence-model comparisons between a recovered graph
//! and ground truth. Only visible nodes are ever queried or conditioned on.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsep::{d_separated, ConditioningSet};
use crate::error::{Error, Result};
use crate::graph::{Dag, MixedGraph, NodeId};
use crate::subsets::Subsets;

/// Largest visible set accepted by the exhaustive independence checks.
pub const EXHAUSTIVE_VISIBLE_LIMIT: usize = 10;

/// Graphs whose visible adjacencies can be compared.
pub trait VisibleSkeleton {
    /// Visible node names in index order.
    fn visible_names(&self) -> Vec<String>;

    /// Adjacent visible pairs, each ordered by name.
    fn visible_adjacencies(&self) -> BTreeSet<(String, String)>;
}

fn name_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl VisibleSkeleton for MixedGraph {
    fn visible_names(&self) -> Vec<String> {
        self.names().to_vec()
    }

    fn visible_adjacencies(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .iter()
            .map(|e| name_pair(self.name(e.a), self.name(e.b)))
            .collect()
    }
}

/// Visible-visible edges, plus every pair of children of a parentless hidden
/// node whose children are all visible (the bidirected edge it stands for).
impl VisibleSkeleton for Dag {
    fn visible_names(&self) -> Vec<String> {
        self.visible_nodes()
            .into_iter()
            .map(|v| self.name(v).to_string())
            .collect()
    }

    fn visible_adjacencies(&self) -> BTreeSet<(String, String)> {
        let mut out: BTreeSet<(String, String)> = self
            .edges()
            .filter(|&(p, c)| !self.is_hidden(p) && !self.is_hidden(c))
            .map(|(p, c)| name_pair(self.name(p), self.name(c)))
            .collect();
        for h in self.hidden_nodes() {
            let children = self.children(h);
            if !self.parents(h).is_empty() || children.iter().any(|&c| self.is_hidden(c)) {
                continue;
            }
            for (i, &a) in children.iter().enumerate() {
                for &b in &children[i + 1..] {
                    out.insert(name_pair(self.name(a), self.name(b)));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonDiff {
    /// Adjacent in the recovered graph only.
    pub superfluous: Vec<(String, String)>,
    /// Adjacent in the truth only.
    pub missing: Vec<(String, String)>,
}

impl SkeletonDiff {
    pub fn is_empty(&self) -> bool {
        self.superfluous.is_empty() && self.missing.is_empty()
    }
}

/// Edge-set difference over visible adjacencies.
pub fn compare_skeletons<R, T>(recovered: &R, truth: &T) -> Result<SkeletonDiff>
where
    R: VisibleSkeleton + ?Sized,
    T: VisibleSkeleton + ?Sized,
{
    let rn: BTreeSet<String> = recovered.visible_names().into_iter().collect();
    let tn: BTreeSet<String> = truth.visible_names().into_iter().collect();
    if rn != tn {
        let diff: Vec<&String> = rn.symmetric_difference(&tn).collect();
        return Err(Error::InvalidParameter(format!(
            "visible node sets differ: {diff:?}"
        )));
    }
    let r = recovered.visible_adjacencies();
    let t = truth.visible_adjacencies();
    Ok(SkeletonDiff {
        superfluous: r.difference(&t).cloned().collect(),
        missing: t.difference(&r).cloned().collect(),
    })
}

/// A pair and conditioning set on which two graphs disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub x: String,
    pub y: String,
    pub s: Vec<String>,
    pub sep_in_a: bool,
    pub sep_in_b: bool,
}

fn resolve(g: &Dag, visibles: &[&str]) -> Result<Vec<NodeId>> {
    visibles
        .iter()
        .map(|name| {
            let v = g.require(name)?;
            if g.is_hidden(v) {
                return Err(Error::InvalidParameter(format!("`{name}` is hidden")));
            }
            Ok(v)
        })
        .collect()
}

/// Compares d-separation in `a` and `b` for every visible pair and every
/// visible conditioning set of size `min..=max`, keeping triples where
/// `keep(sep_in_a, sep_in_b)` holds. Output follows pair order, then set order.
fn scan(
    a: &Dag,
    b: &Dag,
    visibles: &[&str],
    max: Option<usize>,
    keep: fn(bool, bool) -> bool,
) -> Result<Vec<Disagreement>> {
    if visibles.len() > EXHAUSTIVE_VISIBLE_LIMIT {
        return Err(Error::SizeGuard {
            what: "visible nodes for exhaustive comparison",
            actual: visibles.len(),
            limit: EXHAUSTIVE_VISIBLE_LIMIT,
        });
    }
    let ia = resolve(a, visibles)?;
    let ib = resolve(b, visibles)?;
    let n = visibles.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
        .collect();
    let found: Vec<Vec<Disagreement>> = pairs
        .par_iter()
        .map(|&(x, y)| -> Result<Vec<Disagreement>> {
            let rest: Vec<NodeId> = (0..n).filter(|&v| v != x && v != y).map(NodeId).collect();
            let mut out = Vec::new();
            for s in Subsets::up_to(&rest, max.unwrap_or(rest.len())) {
                let sa: ConditioningSet = s.iter().map(|v| ia[v.0]).collect();
                let sb: ConditioningSet = s.iter().map(|v| ib[v.0]).collect();
                let in_a = d_separated(a, ia[x], ia[y], &sa)?;
                let in_b = d_separated(b, ib[x], ib[y], &sb)?;
                if keep(in_a, in_b) {
                    out.push(Disagreement {
                        x: visibles[x].to_string(),
                        y: visibles[y].to_string(),
                        s: s.iter().map(|v| visibles[v.0].to_string()).collect(),
                        sep_in_a: in_a,
                        sep_in_b: in_b,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Every `(x, y, S)` with `|S| <= k` on which `g1` and `g2` disagree.
pub fn independencies_agree_up_to_k(
    g1: &Dag,
    g2: &Dag,
    visibles: &[&str],
    k: usize,
) -> Result<Vec<Disagreement>> {
    scan(g1, g2, visibles, Some(k), |a, b| a != b)
}

/// Every `(x, y, S)`, any size, separated in `output` but not in `truth`.
pub fn soundness_unrestricted(output: &Dag, truth: &Dag, visibles: &[&str]) -> Result<Vec<Disagreement>> {
    scan(output, truth, visibles, None, |a, b| a && !b)
}

/// Disagreement list as JSON.
pub fn disagreements_to_json(list: &[Disagreement]) -> Result<String> {
    Ok(serde_json::to_string_pretty(list)?)
}
