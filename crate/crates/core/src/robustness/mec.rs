use serde::{Deserialize, Serialize};

use super::min_edge_cut;
use crate::error::{invalid, Result};
use crate::graph::{Edge, Graph};
use crate::measures::{measure_table, Measure, MeasureOptions};
use crate::stats::average_ranks;

/// Percentiles of minimum-cut edges under one measure, pooled over graphs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CutPercentilePool {
    pub measure: Option<Measure>,
    pub percentiles: Vec<f64>,
}

impl CutPercentilePool {
    pub fn new(measure: Measure) -> Self {
        Self {
            measure: Some(measure),
            percentiles: Vec::new(),
        }
    }

    pub fn extend(&mut self, percentiles: impl IntoIterator<Item = f64>) {
        self.percentiles.extend(percentiles);
    }

    pub fn median(&self) -> Option<f64> {
        if self.percentiles.is_empty() {
            return None;
        }
        let mut xs = self.percentiles.clone();
        xs.sort_by(f64::total_cmp);
        let mid = xs.len() / 2;
        Some(if xs.len() % 2 == 1 {
            xs[mid]
        } else {
            0.5 * (xs[mid - 1] + xs[mid])
        })
    }
}

/// For each edge of a minimum cut of the LCC, its percentile among all LCC
/// edges under `measure`: `100 (r - 1) / (M - 1)` with `r` the mean rank, so
/// ties land at their midpoint and a constant measure gives 50 everywhere.
pub fn mec_percentiles(g: &Graph, measure: Measure, opts: MeasureOptions) -> Result<Vec<(Edge, f64)>> {
    g.require_undirected()?;
    let lcc = g.largest_connected_component();
    if lcc.len() < 2 {
        return Err(invalid("largest component has fewer than two vertices"));
    }
    let (sub, old_id) = g.induced_subgraph(&lcc)?;
    let table = measure_table(&sub, measure, opts)?;
    let ranks = average_ranks(&table.values);
    let m = sub.edge_count();
    let cut = min_edge_cut(&sub)?;
    Ok(cut
        .into_iter()
        .map(|e| {
            let i = sub.edge_index(e.0, e.1).expect("cut edge of subgraph");
            let pct = if m == 1 {
                50.0
            } else {
                100.0 * (ranks[i] - 1.0) / (m - 1) as f64
            };
            (Edge::undirected(old_id[e.0], old_id[e.1]), pct)
        })
        .collect())
}
