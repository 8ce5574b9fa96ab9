use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::generators::sample_rng;
use crate::graph::{Edge, Graph};
use crate::measures::{measure_table, Measure, MeasureOptions};
use crate::stats;

/// The order in which edges are removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PercolationOrder {
    DdAsc,
    DdDesc,
    RfAsc,
    RoAsc,
    EbwDesc,
    Random,
}

impl PercolationOrder {
    pub const ALL: [PercolationOrder; 6] = [
        PercolationOrder::DdAsc,
        PercolationOrder::DdDesc,
        PercolationOrder::RfAsc,
        PercolationOrder::RoAsc,
        PercolationOrder::EbwDesc,
        PercolationOrder::Random,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PercolationOrder::DdAsc => "dd_asc",
            PercolationOrder::DdDesc => "dd_desc",
            PercolationOrder::RfAsc => "rf_asc",
            PercolationOrder::RoAsc => "ro_asc",
            PercolationOrder::EbwDesc => "ebw_desc",
            PercolationOrder::Random => "random",
        }
    }

    /// Measure and sign such that removal goes by ascending `sign * value`.
    fn key(&self) -> Option<(Measure, f64)> {
        match self {
            PercolationOrder::DdAsc => Some((Measure::Dd, 1.0)),
            PercolationOrder::DdDesc => Some((Measure::Dd, -1.0)),
            PercolationOrder::RfAsc => Some((Measure::FormanRicci, 1.0)),
            PercolationOrder::RoAsc => Some((Measure::OllivierRicci, 1.0)),
            PercolationOrder::EbwDesc => Some((Measure::EdgeBetweenness, -1.0)),
            PercolationOrder::Random => None,
        }
    }
}

impl fmt::Display for PercolationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PercolationOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|o| o.name() == s.to_ascii_lowercase())
            .ok_or_else(|| invalid(format!("unknown percolation ordering `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PercolationOptions {
    /// Removed-edge fractions at which the LCC is recorded, ascending in [0, 1].
    pub checkpoints: Vec<f64>,
    /// Re-rank the remaining edges after every removal instead of ranking
    /// once on the intact graph.
    pub recompute: bool,
    /// Seeds the shuffle that breaks ties between equal measure values.
    pub seed: u64,
    pub measure: MeasureOptions,
}

impl PercolationOptions {
    /// Checkpoints every `step` from 0 to 1 inclusive.
    pub fn evenly_spaced(step: f64, seed: u64) -> Self {
        let count = (1.0 / step).round() as usize;
        Self {
            checkpoints: (0..=count).map(|i| i as f64 / count as f64).collect(),
            recompute: false,
            seed,
            measure: MeasureOptions::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.checkpoints.is_empty() {
            return Err(invalid("no percolation checkpoints"));
        }
        if self.checkpoints.iter().any(|f| !(0.0..=1.0).contains(f)) {
            return Err(invalid("checkpoints must lie in [0, 1]"));
        }
        if self.checkpoints.windows(2).any(|w| w[0] > w[1]) {
            return Err(invalid("checkpoints must be sorted"));
        }
        Ok(())
    }
}

/// One percolation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PercolationTrace {
    pub order: PercolationOrder,
    pub removed_fraction: Vec<f64>,
    /// LCC size divided by the vertex count.
    pub lcc_normalized: Vec<f64>,
}

/// Mean and standard deviation of several runs at shared checkpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub order: PercolationOrder,
    pub removed_fraction: Vec<f64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl TraceSummary {
    pub fn from_runs(runs: &[PercolationTrace]) -> Result<Self> {
        let first = runs.first().ok_or_else(|| invalid("no percolation runs"))?;
        if runs
            .iter()
            .any(|r| r.order != first.order || r.removed_fraction != first.removed_fraction)
        {
            return Err(invalid("runs use different orderings or checkpoints"));
        }
        let (mean, std) = (0..first.removed_fraction.len())
            .map(|i| {
                let xs: Vec<f64> = runs.iter().map(|r| r.lcc_normalized[i]).collect();
                stats::mean_std(&xs)
            })
            .unzip();
        Ok(Self {
            order: first.order,
            removed_fraction: first.removed_fraction.clone(),
            mean,
            std,
        })
    }

    /// Mean LCC at the checkpoint closest to `fraction`.
    pub fn mean_at(&self, fraction: f64) -> f64 {
        let i = self
            .removed_fraction
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - fraction).abs().total_cmp(&(b.1 - fraction).abs()))
            .map(|(i, _)| i)
            .expect("non-empty trace");
        self.mean[i]
    }
}

/// Sorts `idx` by ascending key after a seeded shuffle, so equal keys end up
/// in random order.
fn shuffled_sort(idx: &mut [usize], keys: &[f64], rng: &mut impl rand::Rng) {
    idx.shuffle(rng);
    idx.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
}

/// Edge indices (into `g.edges()`) in removal order.
pub fn removal_order(g: &Graph, order: PercolationOrder, opts: &PercolationOptions) -> Result<Vec<usize>> {
    g.require_undirected()?;
    let m = g.edge_count();
    let mut rng = sample_rng(opts.seed, 0);
    let mut idx: Vec<usize> = (0..m).collect();
    let Some((measure, sign)) = order.key() else {
        idx.shuffle(&mut rng);
        return Ok(idx);
    };
    if !opts.recompute {
        let table = measure_table(g, measure, opts.measure)?;
        let keys: Vec<f64> = table.values.iter().map(|v| sign * v).collect();
        shuffled_sort(&mut idx, &keys, &mut rng);
        return Ok(idx);
    }

    let mut removed: HashSet<Edge> = HashSet::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let current = g.without_edges(&removed);
        let table = measure_table(&current, measure, opts.measure)?;
        let keys: Vec<f64> = table.values.iter().map(|v| sign * v).collect();
        let mut local: Vec<usize> = (0..keys.len()).collect();
        local.shuffle(&mut rng);
        let pick = *local
            .iter()
            .min_by(|&&a, &&b| keys[a].total_cmp(&keys[b]))
            .expect("edges remain");
        let e = current.edges()[pick];
        removed.insert(e);
        out.push(g.edge_index(e.0, e.1).expect("edge of g"));
    }
    Ok(out)
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a != b {
            if self.size[a] < self.size[b] {
                std::mem::swap(&mut a, &mut b);
            }
            self.parent[b] = a;
            self.size[a] += self.size[b];
        }
        self.size[a]
    }
}

/// Removes edges one at a time in the given order and records the
/// normalized LCC size at each checkpoint. A checkpoint `f` corresponds to
/// `round(f * M)` removed edges.
pub fn percolate(g: &Graph, order: PercolationOrder, opts: &PercolationOptions) -> Result<PercolationTrace> {
    opts.validate()?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(invalid("percolation needs at least one vertex"));
    }
    let m = g.edge_count();
    let seq = removal_order(g, order, opts)?;

    // Adding edges back in reverse removal order yields the LCC after each
    // prefix of removals.
    let mut lcc_after = vec![0usize; m + 1];
    let mut sets = DisjointSets::new(n);
    let mut largest = 1;
    lcc_after[m] = largest;
    for r in (0..m).rev() {
        let Edge(a, b) = g.edges()[seq[r]];
        largest = largest.max(sets.union(a, b));
        lcc_after[r] = largest;
    }

    let lcc_normalized = opts
        .checkpoints
        .iter()
        .map(|f| lcc_after[(f * m as f64).round() as usize] as f64 / n as f64)
        .collect();
    Ok(PercolationTrace {
        order,
        removed_fraction: opts.checkpoints.clone(),
        lcc_normalized,
    })
}
