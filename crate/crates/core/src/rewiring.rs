//! Degree-preserving rewiring: a greedy assortativity-increasing heuristic
//! and GA-constrained randomization by double-edge swaps.
//!
//! Every swap keeps each of its four endpoints at its original degree, so the
//! endpoint mean and variance of excess degrees never change. Only the cross
//! term `sum_edges j k` moves, and it is tracked exactly in integers.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::generators::sample_rng;
use crate::graph::{Edge, Graph};

#[derive(Clone, Debug, PartialEq)]
pub struct RewireOutcome {
    pub graph: Graph,
    pub accepted_steps: usize,
    pub attempted_steps: usize,
    /// GA after each accepted step.
    pub ga_trajectory: Vec<f64>,
}

/// Integer moments of excess degrees over ordered endpoint pairs.
struct GaTracker {
    pairs: i128,
    sum: i128,
    var_num: i128,
    cross: i128,
}

impl GaTracker {
    fn new(deg: &[usize], edges: &[Edge]) -> Self {
        let (mut sum, mut sq, mut cross) = (0i128, 0i128, 0i128);
        for &Edge(a, b) in edges {
            let (j, k) = (deg[a] as i128 - 1, deg[b] as i128 - 1);
            sum += j + k;
            sq += j * j + k * k;
            cross += 2 * j * k;
        }
        let pairs = 2 * edges.len() as i128;
        Self {
            pairs,
            sum,
            var_num: pairs * sq - sum * sum,
            cross,
        }
    }

    fn ga_with(&self, cross: i128) -> f64 {
        (self.pairs * cross - self.sum * self.sum) as f64 / self.var_num as f64
    }

    fn ga(&self) -> f64 {
        self.ga_with(self.cross)
    }
}

/// Change in `sum_ordered j k` when `removed` edges are replaced by `added`.
fn cross_delta(deg: &[usize], removed: [(usize, usize); 2], added: [(usize, usize); 2]) -> i128 {
    let prod = |(a, b): (usize, usize)| (deg[a] as i128 - 1) * (deg[b] as i128 - 1);
    2 * (prod(added[0]) + prod(added[1]) - prod(removed[0]) - prod(removed[1]))
}

struct SwapState {
    deg: Vec<usize>,
    edges: Vec<Edge>,
    present: HashSet<Edge>,
    tracker: GaTracker,
}

impl SwapState {
    fn new(g: &Graph) -> Result<Self> {
        g.require_undirected()?;
        if g.edge_count() < 2 {
            return Err(invalid("rewiring needs at least two edges"));
        }
        let deg = g.degrees();
        let edges = g.edges().to_vec();
        let tracker = GaTracker::new(&deg, &edges);
        if tracker.var_num == 0 {
            return Err(Error::UndefinedAssortativity);
        }
        Ok(Self {
            present: edges.iter().copied().collect(),
            deg,
            edges,
            tracker,
        })
    }

    fn pick_pair<R: Rng>(&self, rng: &mut R) -> (usize, usize) {
        let m = self.edges.len();
        let i = rng.random_range(0..m);
        let mut k = rng.random_range(0..m - 1);
        if k >= i {
            k += 1;
        }
        (i, k)
    }

    /// Whether adding `added` (after removing two edges) keeps the graph simple.
    fn admissible(&self, added: [(usize, usize); 2]) -> bool {
        added
            .iter()
            .all(|&(a, b)| a != b && !self.present.contains(&Edge::undirected(a, b)))
            && Edge::undirected(added[0].0, added[0].1) != Edge::undirected(added[1].0, added[1].1)
    }

    fn apply(&mut self, i: usize, k: usize, added: [(usize, usize); 2], delta: i128) {
        self.present.remove(&self.edges[i]);
        self.present.remove(&self.edges[k]);
        self.edges[i] = Edge::undirected(added[0].0, added[0].1);
        self.edges[k] = Edge::undirected(added[1].0, added[1].1);
        self.present.insert(self.edges[i]);
        self.present.insert(self.edges[k]);
        self.tracker.cross += delta;
    }

    fn finish(self, accepted: usize, attempted: usize, trajectory: Vec<f64>) -> Result<RewireOutcome> {
        let n = self.deg.len();
        let graph = Graph::from_edges(n, false, self.edges.iter().map(|e| (e.0, e.1)))?;
        assert_eq!(graph.degrees(), self.deg, "rewiring changed the degree sequence");
        assert_eq!(graph.edge_count(), self.edges.len(), "rewiring produced a multi-edge");
        Ok(RewireOutcome {
            graph,
            accepted_steps: accepted,
            attempted_steps: attempted,
            ga_trajectory: trajectory,
        })
    }

    #[cfg(debug_assertions)]
    fn debug_check(&self) {
        let mut deg = vec![0; self.deg.len()];
        for e in &self.edges {
            deg[e.0] += 1;
            deg[e.1] += 1;
        }
        debug_assert_eq!(deg, self.deg);
        debug_assert_eq!(self.present.len(), self.edges.len());
    }

    #[cfg(not(debug_assertions))]
    fn debug_check(&self) {}
}

/// Greedy assortative rewiring. Each step draws two edges with four distinct
/// endpoints, orders the endpoints by decreasing degree (random tie-break),
/// and proposes joining the top two and the bottom two. The proposal is
/// accepted only if it keeps the graph simple and strictly increases GA.
pub fn assortative_rewire(g: &Graph, steps: usize, seed: u64) -> Result<RewireOutcome> {
    if steps == 0 {
        return Err(invalid("steps must be positive"));
    }
    let mut state = SwapState::new(g)?;
    let mut rng = sample_rng(seed, 0);
    let mut trajectory = Vec::new();
    let mut accepted = 0;

    for _ in 0..steps {
        let (i, k) = state.pick_pair(&mut rng);
        let (Edge(v, u), Edge(w, z)) = (state.edges[i], state.edges[k]);
        let mut ends = [v, u, w, z];
        if HashSet::from(ends).len() < 4 {
            continue;
        }
        ends.shuffle(&mut rng);
        ends.sort_by_key(|&x| std::cmp::Reverse(state.deg[x]));
        let added = [(ends[0], ends[1]), (ends[2], ends[3])];
        if !state.admissible(added) {
            continue;
        }
        let delta = cross_delta(&state.deg, [(v, u), (w, z)], added);
        if delta <= 0 {
            continue;
        }
        state.apply(i, k, added, delta);
        state.debug_check();
        accepted += 1;
        trajectory.push(state.tracker.ga());
    }
    state.finish(accepted, steps, trajectory)
}

/// Randomizes `g` by double-edge swaps while keeping GA within
/// `ga_tolerance` of its starting value. Stops after `target_swaps`
/// acceptances or `100 * target_swaps` attempts.
pub fn constrained_randomize(
    g: &Graph,
    target_swaps: usize,
    ga_tolerance: f64,
    seed: u64,
) -> Result<RewireOutcome> {
    if target_swaps == 0 {
        return Err(invalid("target_swaps must be positive"));
    }
    if ga_tolerance.is_nan() || ga_tolerance <= 0.0 {
        return Err(invalid(format!("ga_tolerance must be positive, got {ga_tolerance}")));
    }
    let mut state = SwapState::new(g)?;
    let mut rng = sample_rng(seed, 0);
    let ga0 = state.tracker.ga();
    let budget = target_swaps.saturating_mul(100);
    let mut trajectory = Vec::new();
    let (mut accepted, mut attempted) = (0, 0);

    while accepted < target_swaps && attempted < budget {
        attempted += 1;
        let (i, k) = state.pick_pair(&mut rng);
        let (Edge(a, b), Edge(c, d)) = (state.edges[i], state.edges[k]);
        let added = if rng.random::<bool>() {
            [(a, d), (c, b)]
        } else {
            [(a, c), (b, d)]
        };
        if !state.admissible(added) {
            continue;
        }
        let delta = cross_delta(&state.deg, [(a, b), (c, d)], added);
        let ga = state.tracker.ga_with(state.tracker.cross + delta);
        if (ga - ga0).abs() > ga_tolerance {
            continue;
        }
        state.apply(i, k, added, delta);
        state.debug_check();
        accepted += 1;
        trajectory.push(ga);
    }
    if accepted == 0 {
        return Err(Error::BudgetExhausted { attempts: attempted });
    }
    state.finish(accepted, attempted, trajectory)
}
