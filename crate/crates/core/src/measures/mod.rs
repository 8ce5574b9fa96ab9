//! Edge-level measures: degree difference (DD), directed degree difference
//! (diDD), Forman-Ricci and Ollivier-Ricci curvature, edge betweenness, and
//! correlations between any two of them.

mod betweenness;
mod ollivier;
pub mod transport;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};
use crate::pmf::Pmf;
use crate::stats;

pub use betweenness::edge_betweenness;
pub use ollivier::{ollivier_ricci, ollivier_ricci_table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "dd")]
    Dd,
    #[serde(rename = "didd")]
    Didd,
    #[serde(rename = "forman_ricci")]
    FormanRicci,
    #[serde(rename = "ollivier_ricci")]
    OllivierRicci,
    #[serde(rename = "edge_betweenness")]
    EdgeBetweenness,
}

impl Measure {
    /// The four undirected measures compared against each other.
    pub const UNDIRECTED: [Measure; 4] = [
        Measure::Dd,
        Measure::FormanRicci,
        Measure::OllivierRicci,
        Measure::EdgeBetweenness,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Dd => "dd",
            Measure::Didd => "didd",
            Measure::FormanRicci => "forman_ricci",
            Measure::OllivierRicci => "ollivier_ricci",
            Measure::EdgeBetweenness => "edge_betweenness",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "dd" => Measure::Dd,
            "didd" => Measure::Didd,
            "forman_ricci" | "forman" | "rf" => Measure::FormanRicci,
            "ollivier_ricci" | "ollivier" | "ro" => Measure::OllivierRicci,
            "edge_betweenness" | "betweenness" | "ebw" => Measure::EdgeBetweenness,
            other => return Err(invalid(format!("unknown measure `{other}`"))),
        })
    }
}

/// One value per edge of a graph, aligned with the graph's edge order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeMeasureTable {
    pub measure: Measure,
    pub edges: Vec<Edge>,
    pub values: Vec<f64>,
}

impl EdgeMeasureTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, e: Edge) -> Option<f64> {
        self.edges.iter().position(|&x| x == e).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.edges.iter().copied().zip(self.values.iter().copied())
    }
}

/// Options for measures that take parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureOptions {
    /// Mass an Ollivier-Ricci random walk keeps at its start vertex.
    pub idleness: f64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self { idleness: 0.0 }
    }
}

/// `|deg(v) - deg(u)|` for an undirected edge.
pub fn dd(g: &Graph, e: Edge) -> Result<u64> {
    g.require_undirected()?;
    let Edge(v, u) = g.require_edge(e)?;
    Ok(g.degree_unchecked(v).abs_diff(g.degree_unchecked(u)) as u64)
}

/// `out(u) - in(v)` for the directed edge `v -> u`.
pub fn didd(g: &Graph, e: Edge) -> Result<i64> {
    g.require_directed()?;
    let Edge(v, u) = g.require_edge(e)?;
    Ok(g.out_neighbors(u).len() as i64 - g.in_neighbors(v).len() as i64)
}

/// Unweighted Forman-Ricci curvature `4 - deg(v) - deg(u)`.
pub fn forman_ricci(g: &Graph, e: Edge) -> Result<i64> {
    g.require_undirected()?;
    let Edge(v, u) = g.require_edge(e)?;
    Ok(4 - g.degree_unchecked(v) as i64 - g.degree_unchecked(u) as i64)
}

fn table_from<F>(g: &Graph, measure: Measure, f: F) -> EdgeMeasureTable
where
    F: Fn(Edge) -> f64,
{
    EdgeMeasureTable {
        measure,
        edges: g.edges().to_vec(),
        values: g.edges().iter().map(|&e| f(e)).collect(),
    }
}

/// Computes a whole table. DD, Forman-Ricci, Ollivier-Ricci and edge
/// betweenness need an undirected graph; diDD needs a directed one.
pub fn measure_table(g: &Graph, measure: Measure, opts: MeasureOptions) -> Result<EdgeMeasureTable> {
    match measure {
        Measure::Dd => {
            g.require_undirected()?;
            let deg = g.degrees();
            Ok(table_from(g, measure, |Edge(v, u)| deg[v].abs_diff(deg[u]) as f64))
        }
        Measure::Didd => {
            g.require_directed()?;
            Ok(table_from(g, measure, |Edge(v, u)| {
                g.out_neighbors(u).len() as f64 - g.in_neighbors(v).len() as f64
            }))
        }
        Measure::FormanRicci => {
            g.require_undirected()?;
            let deg = g.degrees();
            Ok(table_from(g, measure, |Edge(v, u)| {
                4.0 - deg[v] as f64 - deg[u] as f64
            }))
        }
        Measure::OllivierRicci => ollivier_ricci_table(g, opts.idleness),
        Measure::EdgeBetweenness => edge_betweenness(g),
    }
}

/// Computes several tables for the same graph in parallel.
pub fn measure_tables(
    g: &Graph,
    measures: &[Measure],
    opts: MeasureOptions,
) -> Result<Vec<EdgeMeasureTable>> {
    measures
        .par_iter()
        .map(|&m| measure_table(g, m, opts))
        .collect()
}

/// Empirical DD distribution, each edge weighted `1/M`. Directed graphs are
/// collapsed to undirected first.
pub fn dd_distribution(g: &Graph) -> Result<Pmf> {
    let g = g.collapse_to_undirected();
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let deg = g.degrees();
    let mut counts = BTreeMap::new();
    for &Edge(v, u) in g.edges() {
        *counts.entry(deg[v].abs_diff(deg[u]) as i64).or_insert(0u64) += 1;
    }
    Ok(Pmf::from_counts(&counts))
}

/// Empirical diDD distribution of a directed graph.
pub fn didd_distribution(g: &Graph) -> Result<Pmf> {
    g.require_directed()?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let mut counts = BTreeMap::new();
    for &Edge(v, u) in g.edges() {
        let d = g.out_neighbors(u).len() as i64 - g.in_neighbors(v).len() as i64;
        *counts.entry(d).or_insert(0u64) += 1;
    }
    Ok(Pmf::from_counts(&counts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    Pearson,
    Spearman,
}

impl CorrelationKind {
    pub fn name(&self) -> &'static str {
        match self {
            CorrelationKind::Pearson => "pearson",
            CorrelationKind::Spearman => "spearman",
        }
    }
}

/// Correlation of two tables over the same edge set, aligned by edge.
/// `Ok(None)` when either side is constant.
pub fn measure_correlation(
    a: &EdgeMeasureTable,
    b: &EdgeMeasureTable,
    kind: CorrelationKind,
) -> Result<Option<f64>> {
    if a.len() != b.len() {
        return Err(invalid("tables cover different edge sets"));
    }
    if a.len() < 2 {
        return Err(invalid("correlation needs at least two edges"));
    }
    let ys: Vec<f64> = if a.edges == b.edges {
        b.values.clone()
    } else {
        let pos: std::collections::HashMap<Edge, usize> =
            b.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        a.edges
            .iter()
            .map(|e| {
                pos.get(e)
                    .map(|&i| b.values[i])
                    .ok_or_else(|| invalid("tables cover different edge sets"))
            })
            .collect::<Result<_>>()?
    };
    Ok(match kind {
        CorrelationKind::Pearson => stats::pearson(&a.values, &ys),
        CorrelationKind::Spearman => stats::spearman(&a.values, &ys),
    })
}
