use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use statrs::function::gamma::checked_gamma_ur;

use super::{check_variables, Dataset, IndependenceOracle, OracleStats, StatsCounter};
use crate::dsep::ConditioningSet;
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Result of one G² computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GSquaredOutcome {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Too few rows for the degrees of freedom; the verdict defaults to independent.
    pub low_power: bool,
}

/// Upper tail of the chi-square distribution.
pub(crate) fn chi_square_sf(x: f64, dof: usize) -> f64 {
    if dof == 0 || x <= 0.0 {
        return 1.0;
    }
    checked_gamma_ur(dof as f64 / 2.0, x / 2.0).unwrap_or(0.0)
}

/// G² statistic for `x` against `y` within each observed configuration of `s`.
///
/// Degrees of freedom are `(|x|-1)(|y|-1)` per non-empty stratum; strata with
/// no rows contribute nothing. `min_rows_per_dof` sets the low-power cutoff.
pub fn g_squared(
    data: &Dataset,
    x: usize,
    y: usize,
    s: &[usize],
    min_rows_per_dof: f64,
) -> Result<GSquaredOutcome> {
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    let rx = data.cardinality(x);
    let ry = data.cardinality(y);
    let block = rx * ry;

    let mut strata: HashMap<Vec<u32>, Vec<u64>> = HashMap::new();
    let mut key = Vec::with_capacity(s.len());
    for row in data.rows() {
        key.clear();
        key.extend(s.iter().map(|&v| row[v]));
        let table = strata
            .entry(key.clone())
            .or_insert_with(|| vec![0; block]);
        table[row[x] as usize * ry + row[y] as usize] += 1;
    }

    // sum strata in key order so the statistic does not depend on hashing
    let mut keys: Vec<&Vec<u32>> = strata.keys().collect();
    keys.sort_unstable();
    let mut statistic = 0.0;
    for k in keys {
        let table = &strata[k];
        let total: u64 = table.iter().sum();
        let mut row_sums = vec![0u64; rx];
        let mut col_sums = vec![0u64; ry];
        for i in 0..rx {
            for j in 0..ry {
                let o = table[i * ry + j];
                row_sums[i] += o;
                col_sums[j] += o;
            }
        }
        for i in 0..rx {
            for j in 0..ry {
                let o = table[i * ry + j];
                if o > 0 {
                    let expected = row_sums[i] as f64 * col_sums[j] as f64 / total as f64;
                    statistic += o as f64 * (o as f64 / expected).ln();
                }
            }
        }
    }
    let statistic = (2.0 * statistic).max(0.0);
    let dof = (rx - 1) * (ry - 1) * strata.len();
    let low_power = (data.row_count() as f64) < min_rows_per_dof * dof as f64;
    let p_value = if low_power { 1.0 } else { chi_square_sf(statistic, dof) };
    Ok(GSquaredOutcome {
        statistic,
        dof,
        p_value,
        low_power,
    })
}

/// G² independence test over a [`Dataset`]: independent iff `p >= alpha`.
#[derive(Debug)]
pub struct GSquaredTest {
    data: Dataset,
    alpha: f64,
    min_rows_per_dof: f64,
    stats: StatsCounter,
    low_power: AtomicU64,
}

impl GSquaredTest {
    pub const DEFAULT_MIN_ROWS_PER_DOF: f64 = 10.0;

    pub fn new(data: Dataset, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(Self {
            data,
            alpha,
            min_rows_per_dof: Self::DEFAULT_MIN_ROWS_PER_DOF,
            stats: StatsCounter::default(),
            low_power: AtomicU64::new(0),
        })
    }

    pub fn with_min_rows_per_dof(mut self, factor: f64) -> Self {
        self.min_rows_per_dof = factor;
        self
    }

    pub fn data(&self) -> &Dataset {
        &self.data
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Verdicts that defaulted to independence for lack of rows.
    pub fn low_power_verdicts(&self) -> u64 {
        self.low_power.load(Ordering::Relaxed)
    }

    pub fn outcome(&self, x: NodeId, y: NodeId, s: &ConditioningSet) -> Result<GSquaredOutcome> {
        check_variables(self.data.variable_count(), x, y, s)?;
        let s: Vec<usize> = s.iter().map(NodeId::index).collect();
        g_squared(&self.data, x.index(), y.index(), &s, self.min_rows_per_dof)
    }
}

impl IndependenceOracle for GSquaredTest {
    fn variables(&self) -> &[String] {
        self.data.names()
    }

    fn query(&self, x: NodeId, y: NodeId, s: &ConditioningSet) -> Result<bool> {
        let out = self.outcome(x, y, s)?;
        self.stats.record(s.len());
        if out.low_power {
            self.low_power.fetch_add(1, Ordering::Relaxed);
        }
        Ok(out.p_value >= self.alpha)
    }

    fn stats(&self) -> OracleStats {
        self.stats.snapshot()
    }
}
