//! Slow, independent reference implementations used as test oracles.
#![allow(dead_code)]

use degdiff_core::{Edge, Graph};

/// Every simple graph on `n` labeled vertices, as edge lists in
/// lexicographic pair order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Connectivity by depth-first search, ignoring `skip` edges.
pub fn connected_without(n: usize, edges: &[(usize, usize)], skip: &[bool]) -> bool {
    if n == 0 {
        return true;
    }
    let kept: Vec<(usize, usize)> = edges
        .iter()
        .zip(skip)
        .filter(|(_, &s)| !s)
        .map(|(&e, _)| e)
        .collect();
    let adj = adjacency(n, &kept);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    connected_without(n, edges, &vec![false; edges.len()])
}

/// Edge betweenness by enumerating every simple path between every
/// unordered pair and keeping the shortest ones. Indexed like `g.edges()`.
pub fn brute_force_edge_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut out = vec![0.0; g.edge_count()];
    for s in 0..n {
        for t in s + 1..n {
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut on_path = vec![false; n];
            let mut current = vec![s];
            on_path[s] = true;
            simple_paths(g, t, &mut current, &mut on_path, &mut paths);
            let Some(shortest) = paths.iter().map(Vec::len).min() else {
                continue;
            };
            let geodesics: Vec<&Vec<usize>> = paths.iter().filter(|p| p.len() == shortest).collect();
            let weight = 1.0 / geodesics.len() as f64;
            for p in geodesics {
                for w in p.windows(2) {
                    let i = g.edge_index(w[0], w[1]).expect("path follows edges");
                    out[i] += weight;
                }
            }
        }
    }
    out
}

fn simple_paths(
    g: &Graph,
    target: usize,
    current: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let v = *current.last().unwrap();
    if v == target {
        out.push(current.clone());
        return;
    }
    for &w in g.neighbors(v) {
        if !on_path[w] {
            on_path[w] = true;
            current.push(w);
            simple_paths(g, target, current, on_path, out);
            current.pop();
            on_path[w] = false;
        }
    }
}

/// Size of a minimum edge cut: the fewest edges crossing any nontrivial
/// vertex bipartition.
pub fn brute_force_min_cut(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!((2..=20).contains(&n));
    // Vertex n-1 always stays on the complement side.
    (1u32..1 << (n - 1))
        .map(|mask| {
            g.edges()
                .iter()
                .filter(|&&Edge(a, b)| (mask >> a & 1) != (mask >> b & 1))
                .count()
        })
        .min()
        .unwrap()
}

/// Optimal transport cost by enumerating every basic feasible plan: each
/// choice of `m + k - 1` cells whose plan is determined by peeling leaves,
/// kept if nonnegative.
pub fn brute_force_transport(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> f64 {
    let (m, k) = (supply.len(), demand.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let basis = m + k - 1;
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(basis);
    subsets(&cells, basis, 0, &mut chosen, &mut |sel| {
        if let Some(plan) = solve_tree(supply, demand, sel) {
            let c: f64 = sel.iter().zip(&plan).map(|(&(i, j), &x)| x * cost[i][j]).sum();
            best = best.min(c);
        }
    });
    best
}

fn subsets<F: FnMut(&[(usize, usize)])>(
    cells: &[(usize, usize)],
    size: usize,
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
    f: &mut F,
) {
    if chosen.len() == size {
        f(chosen);
        return;
    }
    for i in start..cells.len() {
        if cells.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(cells[i]);
        subsets(cells, size, i + 1, chosen, f);
        chosen.pop();
    }
}

/// Flows on `sel` matching the margins, if `sel` is a spanning tree of the
/// bipartite row/column graph and the flows are nonnegative.
fn solve_tree(supply: &[f64], demand: &[f64], sel: &[(usize, usize)]) -> Option<Vec<f64>> {
    let m = supply.len();
    let mut rest: Vec<f64> = supply.iter().chain(demand).copied().collect();
    let mut plan = vec![f64::NAN; sel.len()];
    let mut open: Vec<bool> = vec![true; sel.len()];
    for _ in 0..sel.len() {
        let mut degree = vec![0usize; rest.len()];
        for (c, &(i, j)) in sel.iter().enumerate() {
            if open[c] {
                degree[i] += 1;
                degree[m + j] += 1;
            }
        }
        let (c, leaf) = sel.iter().enumerate().find_map(|(c, &(i, j))| {
            if !open[c] {
                None
            } else if degree[i] == 1 {
                Some((c, i))
            } else if degree[m + j] == 1 {
                Some((c, m + j))
            } else {
                None
            }
        })?;
        let (i, j) = sel[c];
        let other = if leaf == i { m + j } else { i };
        let x = rest[leaf];
        if x < -1e-12 {
            return None;
        }
        plan[c] = x.max(0.0);
        rest[leaf] = 0.0;
        rest[other] -= x;
        open[c] = false;
    }
    rest.iter().all(|r| r.abs() < 1e-9).then_some(plan)
}

/// Integer GA of an undirected edge list, for cross-checks.
pub fn exact_ga(n: usize, edges: &[(usize, usize)]) -> Option<f64> {
    let mut deg = vec![0i128; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let (mut x, mut xx, mut xy) = (0i128, 0i128, 0i128);
    for &(a, b) in edges {
        let (j, k) = (deg[a] - 1, deg[b] - 1);
        x += j + k;
        xx += j * j + k * k;
        xy += 2 * j * k;
    }
    let pairs = 2 * edges.len() as i128;
    let var = pairs * xx - x * x;
    (var != 0).then(|| (pairs * xy - x * x) as f64 / var as f64)
}

/// Every simple graph on `degrees.len()` vertices realizing `degrees`.
pub fn realizations(degrees: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let n = degrees.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut rem = degrees.to_vec();
    let mut chosen = Vec::new();
    realize(&pairs, 0, &mut rem, &mut chosen, &mut out);
    out
}

fn realize(
    pairs: &[(usize, usize)],
    at: usize,
    rem: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if rem.iter().all(|&r| r == 0) {
        out.push(chosen.clone());
        return;
    }
    if at == pairs.len() {
        return;
    }
    // A vertex whose last possible pair has passed must already be saturated.
    let (a, b) = pairs[at];
    if a > 0 && rem[a - 1] > 0 && pairs[at - 1].0 == a - 1 {
        return;
    }
    if rem[a] > 0 && rem[b] > 0 {
        rem[a] -= 1;
        rem[b] -= 1;
        chosen.push((a, b));
        realize(pairs, at + 1, rem, chosen, out);
        chosen.pop();
        rem[a] += 1;
        rem[b] += 1;
    }
    realize(pairs, at + 1, rem, chosen, out);
}
