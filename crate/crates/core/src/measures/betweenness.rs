use std::collections::VecDeque;

use rayon::prelude::*;

use super::{EdgeMeasureTable, Measure};
use crate::error::Result;
use crate::graph::Graph;

/// Sources per parallel work unit. Partial sums are added in chunk order, so
/// the result does not depend on the number of threads.
const CHUNK: usize = 32;

/// Unnormalized edge betweenness (Brandes): for every edge, the sum over
/// unordered vertex pairs of the fraction of shortest paths through it.
pub fn edge_betweenness(g: &Graph) -> Result<EdgeMeasureTable> {
    g.require_undirected()?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let adj: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&w| (w, g.edge_index(v, w).expect("adjacent")))
                .collect()
        })
        .collect();

    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; m];
            let mut scratch = Scratch::new(n);
            for &s in chunk {
                accumulate(&adj, s, &mut scratch, &mut acc);
            }
            acc
        })
        .collect();

    let mut values = vec![0.0; m];
    for part in partials {
        for (v, p) in values.iter_mut().zip(part) {
            *v += p;
        }
    }
    // Every unordered pair was visited from both ends.
    for v in &mut values {
        *v /= 2.0;
    }
    Ok(EdgeMeasureTable {
        measure: Measure::EdgeBetweenness,
        edges: g.edges().to_vec(),
        values,
    })
}

struct Scratch {
    order: Vec<usize>,
    preds: Vec<Vec<(usize, usize)>>,
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            order: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            queue: VecDeque::with_capacity(n),
        }
    }
}

fn accumulate(adj: &[Vec<(usize, usize)>], s: usize, sc: &mut Scratch, acc: &mut [f64]) {
    for &v in &sc.order {
        sc.preds[v].clear();
        sc.sigma[v] = 0.0;
        sc.dist[v] = -1;
        sc.delta[v] = 0.0;
    }
    sc.order.clear();

    sc.sigma[s] = 1.0;
    sc.dist[s] = 0;
    sc.queue.push_back(s);
    while let Some(v) = sc.queue.pop_front() {
        sc.order.push(v);
        for &(w, e) in &adj[v] {
            if sc.dist[w] < 0 {
                sc.dist[w] = sc.dist[v] + 1;
                sc.queue.push_back(w);
            }
            if sc.dist[w] == sc.dist[v] + 1 {
                sc.sigma[w] += sc.sigma[v];
                sc.preds[w].push((v, e));
            }
        }
    }

    for &w in sc.order.iter().rev() {
        let coeff = (1.0 + sc.delta[w]) / sc.sigma[w];
        for i in 0..sc.preds[w].len() {
            let (v, e) = sc.preds[w][i];
            let c = sc.sigma[v] * coeff;
            acc[e] += c;
            sc.delta[v] += c;
        }
    }
}
