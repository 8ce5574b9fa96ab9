//! Seeded random graph models: Erdős–Rényi, Watts–Strogatz,
//! Barabási–Albert and random geometric graphs.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), which
//! produces the same stream on every platform. Ensemble member `i` uses the
//! generator seeded with the ensemble's base seed and switched to stream `i`,
//! so members are independent and can be built in any order or in parallel.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Edge, Graph, GraphBuilder};

pub type ModelRng = ChaCha8Rng;

/// RNG for member `index` of an ensemble with the given base seed.
pub fn sample_rng(base_seed: u64, index: u64) -> ModelRng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Model {
    /// G(n, p).
    Er { n: usize, p: f64 },
    /// Ring lattice with `k` neighbors per vertex, rewired with probability `beta`.
    Ws { n: usize, k: usize, beta: f64 },
    /// Preferential attachment, `beta` edges per new vertex.
    Ba { n: usize, beta: usize },
    /// Unit-square geometric graph with connection radius `radius`.
    Rg { n: usize, radius: f64 },
}

impl Model {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Model::Er { n, p } => {
                if n == 0 {
                    return Err(invalid("ER requires n >= 1"));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(invalid(format!("ER probability {p} outside [0, 1]")));
                }
            }
            Model::Ws { n, k, beta } => {
                if k % 2 != 0 || k >= n {
                    return Err(invalid(format!("WS needs even k < n, got k={k}, n={n}")));
                }
                if !(0.0..=1.0).contains(&beta) {
                    return Err(invalid(format!("WS rewiring probability {beta} outside [0, 1]")));
                }
            }
            Model::Ba { n, beta } => {
                if beta < 1 || beta >= n {
                    return Err(invalid(format!("BA needs 1 <= beta < n, got beta={beta}, n={n}")));
                }
            }
            Model::Rg { n, radius } => {
                if n == 0 {
                    return Err(invalid("RG requires n >= 1"));
                }
                if radius.is_nan() || radius <= 0.0 {
                    return Err(invalid(format!("RG radius must be positive, got {radius}")));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Model::Er { n, .. } | Model::Ws { n, .. } | Model::Ba { n, .. } | Model::Rg { n, .. } => n,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Model::Er { .. } => "er",
            Model::Ws { .. } => "ws",
            Model::Ba { .. } => "ba",
            Model::Rg { .. } => "rg",
        }
    }

    pub fn generate<R: Rng>(&self, rng: &mut R) -> Result<Graph> {
        self.validate()?;
        Ok(match *self {
            Model::Er { n, p } => er(n, p, rng),
            Model::Ws { n, k, beta } => ws(n, k, beta, rng),
            Model::Ba { n, beta } => ba(n, beta, rng),
            Model::Rg { n, radius } => rg(n, radius, rng),
        })
    }
}

pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    Model::Er { n, p }.generate(&mut sample_rng(seed, 0))
}

pub fn gen_ws(n: usize, k: usize, beta: f64, seed: u64) -> Result<Graph> {
    Model::Ws { n, k, beta }.generate(&mut sample_rng(seed, 0))
}

pub fn gen_ba(n: usize, beta: usize, seed: u64) -> Result<Graph> {
    Model::Ba { n, beta }.generate(&mut sample_rng(seed, 0))
}

pub fn gen_rg(n: usize, radius: f64, seed: u64) -> Result<Graph> {
    Model::Rg { n, radius }.generate(&mut sample_rng(seed, 0))
}

/// A model plus how many members to draw and from which base seed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub model: Model,
    pub sample_count: usize,
    pub base_seed: u64,
}

impl EnsembleSpec {
    pub fn new(model: Model, sample_count: usize, base_seed: u64) -> Result<Self> {
        model.validate()?;
        if sample_count == 0 {
            return Err(invalid("ensemble needs at least one sample"));
        }
        Ok(Self {
            model,
            sample_count,
            base_seed,
        })
    }

    pub fn member(&self, index: usize) -> Result<Graph> {
        self.model
            .generate(&mut sample_rng(self.base_seed, index as u64))
    }

    /// Builds every member (in parallel) and maps it through `f`, returning
    /// results in member order.
    pub fn map<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize, Graph) -> Result<T> + Sync,
    {
        (0..self.sample_count)
            .into_par_iter()
            .map(|i| f(i, self.member(i)?))
            .collect()
    }
}

fn er<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    if p >= 1.0 {
        for v in 1..n {
            edges.extend((0..v).map(|w| (v, w)));
        }
    } else if p > 0.0 {
        // Geometric skipping over the lower triangle (Batagelj & Brandes).
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.random();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((v, w as usize));
            }
        }
    }
    Graph::from_edges(n, false, edges).expect("ids in range")
}

fn ws<R: Rng>(n: usize, k: usize, beta: f64, rng: &mut R) -> Graph {
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    // Rewire the far endpoint of each lattice edge, one ring distance at a time.
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !adj[u].contains(&v) || rng.random::<f64>() >= beta {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let mut edges: Vec<Edge> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&w| u < w).map(move |&w| Edge(u, w)))
        .collect();
    edges.sort_unstable();
    Graph::from_edges(n, false, edges.into_iter().map(|e| (e.0, e.1))).expect("ids in range")
}

fn ba<R: Rng>(n: usize, beta: usize, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n, false);
    // Every edge endpoint appears once, so a uniform draw is degree-proportional.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * beta * n);
    for leaf in 1..=beta {
        b.add_edge(0, leaf).expect("ids in range");
        endpoints.extend([0, leaf]);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(beta);
    for v in beta + 1..n {
        chosen.clear();
        while chosen.len() < beta {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            b.add_edge(v, t).expect("ids in range");
            endpoints.extend([v, t]);
        }
    }
    b.build()
}

fn rg<R: Rng>(n: usize, radius: f64, rng: &mut R) -> Graph {
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for (i, &(xi, yi)) in points.iter().enumerate() {
        for (j, &(xj, yj)) in points.iter().enumerate().skip(i + 1) {
            let (dx, dy) = (xi - xj, yi - yj);
            if dx * dx + dy * dy <= r2 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, false, edges).expect("ids in range")
}
