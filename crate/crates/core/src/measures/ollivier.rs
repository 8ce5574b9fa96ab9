use rayon::prelude::*;

use super::transport::transport_cost;
use super::{EdgeMeasureTable, Measure};
use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};

/// Random-walk measure of `x`: `idleness` at `x`, the rest spread evenly over
/// its neighbors.
fn walk_measure(g: &Graph, x: usize, idleness: f64) -> (Vec<usize>, Vec<f64>) {
    let ns = g.neighbors(x);
    let share = (1.0 - idleness) / ns.len() as f64;
    let mut support = Vec::with_capacity(ns.len() + 1);
    let mut mass = Vec::with_capacity(ns.len() + 1);
    if idleness > 0.0 {
        support.push(x);
        mass.push(idleness);
    }
    support.extend_from_slice(ns);
    mass.extend(std::iter::repeat_n(share, ns.len()));
    (support, mass)
}

/// Hop distances between the two supports. Both supports sit within one hop
/// of adjacent vertices, so every distance is at most 3 and only distances 0,
/// 1 and 2 need checking.
fn support_distances(g: &Graph, from: &[usize], to: &[usize], stamp: &mut [usize]) -> Vec<Vec<f64>> {
    from.iter()
        .enumerate()
        .map(|(i, &x)| {
            let tag = i + 1;
            for &w in g.neighbors(x) {
                stamp[w] = tag;
            }
            let row = to
                .iter()
                .map(|&y| {
                    if y == x {
                        0.0
                    } else if stamp[y] == tag {
                        1.0
                    } else if g.neighbors(y).iter().any(|&w| stamp[w] == tag) {
                        2.0
                    } else {
                        3.0
                    }
                })
                .collect();
            for &w in g.neighbors(x) {
                stamp[w] = 0;
            }
            row
        })
        .collect()
}

fn curvature(g: &Graph, Edge(v, u): Edge, idleness: f64, stamp: &mut [usize]) -> Result<f64> {
    let (sv, mv) = walk_measure(g, v, idleness);
    let (su, mu) = walk_measure(g, u, idleness);
    let cost = support_distances(g, &sv, &su, stamp);
    Ok(1.0 - transport_cost(&mv, &mu, &cost)?)
}

fn check_idleness(idleness: f64) -> Result<()> {
    if (0.0..=1.0).contains(&idleness) {
        Ok(())
    } else {
        Err(invalid(format!("idleness {idleness} outside [0, 1]")))
    }
}

/// Ollivier-Ricci curvature `1 - W1(m_v, m_u)` of an undirected edge, with
/// hop-count ground distance and exact transport.
pub fn ollivier_ricci(g: &Graph, e: Edge, idleness: f64) -> Result<f64> {
    g.require_undirected()?;
    check_idleness(idleness)?;
    let e = g.require_edge(e)?;
    let mut stamp = vec![0; g.vertex_count()];
    curvature(g, e, idleness, &mut stamp)
}

pub fn ollivier_ricci_table(g: &Graph, idleness: f64) -> Result<EdgeMeasureTable> {
    g.require_undirected()?;
    check_idleness(idleness)?;
    let values = g
        .edges()
        .par_iter()
        .map_init(
            || vec![0; g.vertex_count()],
            |stamp, &e| curvature(g, e, idleness, stamp),
        )
        .collect::<Result<Vec<f64>, Error>>()?;
    Ok(EdgeMeasureTable {
        measure: Measure::OllivierRicci,
        edges: g.edges().to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::UNREACHABLE;
    use proptest::prelude::*;

    /// Exhaustive LP vertex search: every basic feasible plan is supported on
    /// a spanning tree of the bipartite source/target graph, so try every set
    /// of `m + k - 1` cells, solve the tree by peeling leaves, and keep the
    /// cheapest feasible plan.
    fn brute_force_transport(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> f64 {
        let (m, k) = (supply.len(), demand.len());
        let cells: Vec<(usize, usize)> =
            (0..m).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
        let need = m + k - 1;
        let mut best = f64::INFINITY;
        let mut chosen = Vec::with_capacity(need);
        type Visit<'a> = dyn FnMut(&[(usize, usize)]) + 'a;
        fn rec(
            start: usize,
            need: usize,
            cells: &[(usize, usize)],
            chosen: &mut Vec<(usize, usize)>,
            visit: &mut Visit<'_>,
        ) {
            if chosen.len() == need {
                visit(chosen);
                return;
            }
            for i in start..cells.len() {
                chosen.push(cells[i]);
                rec(i + 1, need, cells, chosen, visit);
                chosen.pop();
            }
        }
        let mut visit = |set: &[(usize, usize)]| {
            let mut rs = supply.to_vec();
            let mut cs = demand.to_vec();
            let mut open: Vec<(usize, usize)> = set.to_vec();
            let mut flow = 0.0;
            while !open.is_empty() {
                // A row or column touched by exactly one open cell is a leaf.
                let leaf = open.iter().position(|&(i, j)| {
                    open.iter().filter(|c| c.0 == i).count() == 1
                        || open.iter().filter(|c| c.1 == j).count() == 1
                });
                let Some(p) = leaf else { return };
                let (i, j) = open[p];
                let row_leaf = open.iter().filter(|c| c.0 == i).count() == 1;
                let x = if row_leaf { rs[i] } else { cs[j] };
                if x < -1e-12 {
                    return;
                }
                rs[i] -= x;
                cs[j] -= x;
                flow += x * cost[i][j];
                open.swap_remove(p);
            }
            if rs.iter().chain(&cs).all(|r| r.abs() < 1e-9) {
                best = best.min(flow);
            }
        };
        rec(0, need, &cells, &mut chosen, &mut visit);
        best
    }

    #[test]
    fn small_graph_examples() {
        let k2 = path(2);
        assert!(ollivier_ricci(&k2, Edge(0, 1), 0.0).unwrap().abs() < 1e-12);
        let k3 = complete(3);
        assert!((ollivier_ricci(&k3, Edge(0, 1), 0.0).unwrap() - 0.5).abs() < 1e-12);
        let p3 = path(3);
        assert!(ollivier_ricci(&p3, Edge(0, 1), 0.0).unwrap().abs() < 1e-12);
        assert!(ollivier_ricci(&p3, Edge(0, 2), 0.0).is_err());
        assert!(ollivier_ricci(&p3, Edge(0, 1), 1.5).is_err());
    }

    #[test]
    fn brute_force_oracle_agrees_on_known_plans() {
        let c = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!((brute_force_transport(&[0.7, 0.3], &[0.5, 0.5], &c) - 0.2).abs() < 1e-12);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (3usize..9).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 2..18)
                .prop_map(move |es| Graph::from_edges(n, false, es).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn cost_matrix_matches_bfs(g in arb_graph(), idle in prop::sample::select(vec![0.0, 0.25])) {
            let mut stamp = vec![0; g.vertex_count()];
            for &Edge(v, u) in g.edges() {
                let (sv, _) = walk_measure(&g, v, idle);
                let (su, _) = walk_measure(&g, u, idle);
                let cost = support_distances(&g, &sv, &su, &mut stamp);
                for (i, &x) in sv.iter().enumerate() {
                    let d = g.hop_distances(x, &su).unwrap();
                    for (j, y) in su.iter().enumerate() {
                        prop_assert!(d[y] != UNREACHABLE);
                        prop_assert_eq!(cost[i][j], d[y] as f64);
                    }
                }
            }
        }

        #[test]
        fn transport_matches_exhaustive_plan_search(g in arb_graph(), idle in prop::sample::select(vec![0.0, 0.3])) {
            let mut stamp = vec![0; g.vertex_count()];
            for &e in g.edges() {
                let (sv, mv) = walk_measure(&g, e.0, idle);
                let (su, mu) = walk_measure(&g, e.1, idle);
                if sv.len() > 4 || su.len() > 4 {
                    continue;
                }
                let cost = support_distances(&g, &sv, &su, &mut stamp);
                let fast = transport_cost(&mv, &mu, &cost).unwrap();
                let slow = brute_force_transport(&mv, &mu, &cost);
                prop_assert!((fast - slow).abs() < 1e-9, "{} vs {}", fast, slow);
            }
        }

        #[test]
        fn curvature_in_range(g in arb_graph()) {
            let t = ollivier_ricci_table(&g, 0.0).unwrap();
            for v in t.values {
                prop_assert!((-2.0 - 1e-12..=1.0 + 1e-12).contains(&v));
            }
        }
    }
}
