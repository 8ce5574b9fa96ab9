use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};

/// A global minimum edge cut of a connected undirected graph (Stoer–Wagner
/// with unit weights). One optimal cut is returned; ties between phases go to
/// the earliest phase.
pub fn min_edge_cut(g: &Graph) -> Result<Vec<Edge>> {
    g.require_undirected()?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(invalid("minimum cut needs at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let mut weights: Vec<HashMap<usize, u64>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| (w, 1)).collect())
        .collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();

    let mut best_weight = u64::MAX;
    let mut best_side: Vec<usize> = Vec::new();
    let mut key = vec![0u64; n];
    let mut in_a = vec![false; n];

    while active.len() > 1 {
        for &v in &active {
            key[v] = 0;
            in_a[v] = false;
        }
        // Maximum adjacency ordering; smallest id wins ties.
        let mut heap = BinaryHeap::from([(0u64, Reverse(active[0]))]);
        let (mut prev, mut last) = (usize::MAX, usize::MAX);
        let mut added = 0;
        while let Some((k, Reverse(v))) = heap.pop() {
            if in_a[v] || k != key[v] {
                continue;
            }
            in_a[v] = true;
            prev = last;
            last = v;
            added += 1;
            for (&w, &c) in &weights[v] {
                if !in_a[w] {
                    key[w] += c;
                    heap.push((key[w], Reverse(w)));
                }
            }
        }
        debug_assert_eq!(added, active.len(), "contracted graph stays connected");

        if key[last] < best_weight {
            best_weight = key[last];
            best_side = members[last].clone();
        }

        // Contract `last` into `prev`.
        let moved = std::mem::take(&mut weights[last]);
        for (w, c) in moved {
            weights[w].remove(&last);
            if w != prev {
                *weights[prev].entry(w).or_insert(0) += c;
                *weights[w].entry(prev).or_insert(0) += c;
            }
        }
        let absorbed = std::mem::take(&mut members[last]);
        members[prev].extend(absorbed);
        active.retain(|&v| v != last);
    }

    let side: HashSet<usize> = best_side.into_iter().collect();
    let cut: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| side.contains(&e.0) != side.contains(&e.1))
        .copied()
        .collect();
    assert_eq!(cut.len() as u64, best_weight, "cut weight mismatch");
    let rest = g.without_edges(&cut.iter().copied().collect());
    assert!(!rest.is_connected(), "removing the cut must disconnect the graph");
    Ok(cut)
}
