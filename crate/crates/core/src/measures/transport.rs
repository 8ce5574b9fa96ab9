//! Exact optimal transport between two small discrete measures.
//!
//! Solved as a min-cost flow on the bipartite transportation network by
//! successive shortest augmenting paths. Costs are arbitrary non-negative
//! reals; masses are reals whose totals must agree.

use std::collections::VecDeque;

use crate::error::{invalid, Result};

const EPS: f64 = 1e-13;

struct Arc {
    to: usize,
    cap: f64,
    cost: f64,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: f64, cost: f64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0.0,
            cost: -cost,
        });
    }

    /// Cheapest residual path by label-correcting search. Returns the arc
    /// used to enter each node.
    fn shortest_path(&self, source: usize, sink: usize) -> Option<Vec<usize>> {
        let n = self.out.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut via = vec![usize::MAX; n];
        let mut queued = vec![false; n];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0.0;
        queued[source] = true;
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            for &a in &self.out[v] {
                let arc = &self.arcs[a];
                if arc.cap <= EPS {
                    continue;
                }
                let nd = dist[v] + arc.cost;
                if nd < dist[arc.to] - 1e-12 {
                    dist[arc.to] = nd;
                    via[arc.to] = a;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        dist[sink].is_finite().then_some(via)
    }
}

/// Minimum total cost of moving `supply` onto `demand`, where moving one unit
/// from source `i` to target `j` costs `cost[i][j]`.
pub fn transport_cost(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> Result<f64> {
    let total_s: f64 = supply.iter().sum();
    let total_d: f64 = demand.iter().sum();
    if (total_s - total_d).abs() > 1e-9 * total_s.max(1.0) {
        return Err(invalid(format!(
            "unbalanced transport problem: {total_s} vs {total_d}"
        )));
    }
    if cost.len() != supply.len() || cost.iter().any(|row| row.len() != demand.len()) {
        return Err(invalid("cost matrix shape does not match the measures"));
    }
    let (m, k) = (supply.len(), demand.len());
    let (source, sink) = (m + k, m + k + 1);
    let mut net = Network::new(m + k + 2);
    for (i, &a) in supply.iter().enumerate() {
        net.add(source, i, a, 0.0);
    }
    for (j, &b) in demand.iter().enumerate() {
        net.add(m + j, sink, b, 0.0);
    }
    for (i, row) in cost.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            net.add(i, m + j, f64::INFINITY, c);
        }
    }

    let mut moved = 0.0;
    let mut total = 0.0;
    while moved < total_s.min(total_d) - EPS {
        let Some(via) = net.shortest_path(source, sink) else {
            break;
        };
        let mut push = f64::INFINITY;
        let mut v = sink;
        while v != source {
            let a = via[v];
            push = push.min(net.arcs[a].cap);
            v = net.arcs[a ^ 1].to;
        }
        let mut v = sink;
        while v != source {
            let a = via[v];
            net.arcs[a].cap -= push;
            net.arcs[a ^ 1].cap += push;
            total += push * net.arcs[a].cost;
            v = net.arcs[a ^ 1].to;
        }
        moved += push;
    }
    Ok(total)
}
