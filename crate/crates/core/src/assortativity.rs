//! Degree assortativity and its local pieces.
//!
//! Everything here works on excess degrees (degree minus one) seen from edge
//! endpoints. Each undirected edge contributes both orientations, so the
//! joint matrix `e[j][k]` is symmetric and sums to one over `2M` ordered
//! endpoint pairs. Regular graphs have zero excess-degree variance; there
//! the assortativity is undefined and reported as `None`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::pmf::Pmf;

/// Joint and marginal excess-degree statistics over ordered endpoint pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcessDegreeStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Ordered endpoint pairs per `(j, k)` cell; sums to `2M`.
    pub pair_counts: BTreeMap<(usize, usize), u64>,
    /// Excess-degree distribution `q_j` at a random edge endpoint.
    pub excess_pmf: Pmf,
    pub mean: f64,
    pub std_dev: f64,
    degenerate: bool,
}

impl ExcessDegreeStats {
    /// `e[j][k]`.
    pub fn joint(&self, j: usize, k: usize) -> f64 {
        self.pair_counts
            .get(&(j, k))
            .map_or(0.0, |&c| c as f64 / (2 * self.edge_count) as f64)
    }

    pub fn joint_iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        let total = (2 * self.edge_count) as f64;
        self.pair_counts.iter().map(move |(&jk, &c)| (jk, c as f64 / total))
    }

    pub fn variance(&self) -> f64 {
        self.std_dev * self.std_dev
    }

    /// True when every endpoint has the same excess degree.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Row sums of `e`.
    pub fn row_marginal(&self) -> BTreeMap<usize, f64> {
        let mut out = BTreeMap::new();
        for ((j, _), p) in self.joint_iter() {
            *out.entry(j).or_insert(0.0) += p;
        }
        out
    }
}

pub fn joint_degree_pmf(g: &Graph) -> Result<ExcessDegreeStats> {
    g.require_undirected()?;
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let deg = g.degrees();
    let mut pair_counts = BTreeMap::new();
    for &Edge(a, b) in g.edges() {
        let (j, k) = (deg[a] - 1, deg[b] - 1);
        *pair_counts.entry((j, k)).or_insert(0u64) += 1;
        *pair_counts.entry((k, j)).or_insert(0u64) += 1;
    }

    // q_j straight from endpoints: a vertex of degree d is an endpoint d times.
    let mut endpoint_counts = BTreeMap::new();
    for &d in deg.iter().filter(|&&d| d > 0) {
        *endpoint_counts.entry(d as i64 - 1).or_insert(0u64) += d as u64;
    }
    let excess_pmf = Pmf::from_counts(&endpoint_counts);
    let mean = excess_pmf.mean();
    let second: f64 = excess_pmf.iter().map(|(j, q)| (j * j) as f64 * q).sum();
    let degenerate = endpoint_counts.len() < 2;
    let std_dev = if degenerate {
        0.0
    } else {
        (second - mean * mean).max(0.0).sqrt()
    };
    Ok(ExcessDegreeStats {
        vertex_count: g.vertex_count(),
        edge_count: m,
        pair_counts,
        excess_pmf,
        mean,
        std_dev,
        degenerate,
    })
}

/// Pearson correlation of excess degrees over the `2M` ordered endpoint
/// pairs, accumulated exactly in integers.
pub fn global_assortativity(g: &Graph) -> Result<Option<f64>> {
    g.require_undirected()?;
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let deg = g.degrees();
    let (mut sx, mut sxx, mut sxy) = (0i128, 0i128, 0i128);
    for &Edge(a, b) in g.edges() {
        let (j, k) = (deg[a] as i128 - 1, deg[b] as i128 - 1);
        sx += j + k;
        sxx += j * j + k * k;
        sxy += 2 * j * k;
    }
    let n = 2 * m as i128;
    let var = n * sxx - sx * sx;
    if var == 0 {
        return Ok(None);
    }
    Ok(Some((n * sxy - sx * sx) as f64 / var as f64))
}

/// Assortativity from the joint matrix alone: row and column marginals
/// `a`, `b` and `r = sum jk (e_jk - a_j b_k) / (sigma_a sigma_b)`.
pub fn assortativity_from_joint(stats: &ExcessDegreeStats) -> Option<f64> {
    if stats.is_degenerate() {
        return None;
    }
    let mut a = BTreeMap::<usize, f64>::new();
    let mut b = BTreeMap::<usize, f64>::new();
    for ((j, k), p) in stats.joint_iter() {
        *a.entry(j).or_default() += p;
        *b.entry(k).or_default() += p;
    }
    let moments = |m: &BTreeMap<usize, f64>| {
        let mu: f64 = m.iter().map(|(&x, &p)| x as f64 * p).sum();
        let s2: f64 = m.iter().map(|(&x, &p)| (x as f64 - mu).powi(2) * p).sum();
        (mu, s2.sqrt())
    };
    let (mu_a, sd_a) = moments(&a);
    let (mu_b, sd_b) = moments(&b);
    let cov: f64 = stats
        .joint_iter()
        .map(|((j, k), p)| j as f64 * k as f64 * p)
        .sum::<f64>()
        - mu_a * mu_b;
    Some(cov / (sd_a * sd_b))
}

/// `sum_{j,k} jk (e_jk - q_j q_k) / sigma_q^2` with `q` taken from the
/// endpoint excess-degree distribution.
pub fn assortativity_summation(stats: &ExcessDegreeStats) -> Option<f64> {
    if stats.is_degenerate() {
        return None;
    }
    let q: BTreeMap<usize, f64> = stats
        .excess_pmf
        .iter()
        .map(|(j, p)| (j as usize, p))
        .collect();
    let mut total = 0.0;
    for (&j, &qj) in &q {
        for (&k, &qk) in &q {
            let jk = j as f64 * k as f64;
            total += jk * (stats.joint(j, k) - qj * qk);
        }
    }
    Some(total / stats.variance())
}

/// Contribution of `v` to the global assortativity:
/// `j (j + 1) (kbar_v - mu_q) / (2 M sigma_q^2)`, with `j` the excess degree
/// of `v` and `kbar_v` the mean excess degree of its neighbors.
pub fn local_node_assortativity(g: &Graph, v: usize) -> Result<Option<f64>> {
    let stats = joint_degree_pmf(g)?;
    let deg = g.degrees();
    if g.degree(v)? == 0 {
        return Err(Error::IsolatedVertex(v));
    }
    Ok(lna_with(g, &deg, &stats, v))
}

fn lna_with(g: &Graph, deg: &[usize], stats: &ExcessDegreeStats, v: usize) -> Option<f64> {
    if stats.is_degenerate() {
        return None;
    }
    let d = deg[v];
    if d == 0 {
        return Some(0.0);
    }
    let j = (d - 1) as f64;
    let kbar = g.neighbors(v).iter().map(|&u| (deg[u] - 1) as f64).sum::<f64>() / d as f64;
    let two_m = (2 * stats.edge_count) as f64;
    Some(j * (j + 1.0) * (kbar - stats.mean) / (two_m * stats.variance()))
}

/// Local node assortativity of every vertex; isolated vertices contribute 0.
pub fn lna_vector(g: &Graph) -> Result<Option<Vec<f64>>> {
    let stats = joint_degree_pmf(g)?;
    if stats.is_degenerate() {
        return Ok(None);
    }
    let deg = g.degrees();
    Ok(Some(
        (0..g.vertex_count())
            .map(|v| lna_with(g, &deg, &stats, v).expect("non-degenerate"))
            .collect(),
    ))
}

/// `sum_d d P(d)`.
pub fn dd_first_moment(pmf: &Pmf) -> f64 {
    pmf.mean()
}

/// Terms linking the excess-degree covariance to the DD distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub assortativity: f64,
    pub excess_variance: f64,
    /// `sigma_q^2 * r`, the excess-degree covariance over endpoint pairs.
    pub covariance: f64,
    /// `0.5 * <d>`.
    pub half_mean_dd: f64,
    /// `covariance - half_mean_dd`.
    pub residual: f64,
    /// `sum_v lna(v)`, equal to `assortativity` up to rounding.
    pub lna_sum: f64,
}

pub fn decomposition_report(g: &Graph) -> Result<Option<DecompositionReport>> {
    let stats = joint_degree_pmf(g)?;
    let Some(r) = global_assortativity(g)? else {
        return Ok(None);
    };
    let lna = lna_vector(g)?.expect("defined when r is");
    let covariance = stats.variance() * r;
    let half_mean_dd = 0.5 * dd_first_moment(&crate::measures::dd_distribution(g)?);
    Ok(Some(DecompositionReport {
        assortativity: r,
        excess_variance: stats.variance(),
        covariance,
        half_mean_dd,
        residual: covariance - half_mean_dd,
        lna_sum: lna.iter().sum(),
    }))
}
