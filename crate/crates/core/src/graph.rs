//! Simple graphs with dense vertex ids.
//!
//! A [`Graph`] is immutable once built. Undirected edges are stored once as
//! `(min, max)` and appear in both endpoints' neighbor lists; directed edges
//! are stored as `(tail, head)` with separate in- and out-lists. Loops and
//! repeated edges never make it in: [`GraphBuilder`] drops them and counts
//! what it dropped.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Marker for an unreachable target in [`Graph::hop_distances`].
pub const UNREACHABLE: u32 = u32::MAX;

/// An edge between two vertex ids. Undirected edges are normalized so that
/// `self.0 < self.1`; directed edges read as `self.0 -> self.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn undirected(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn tail(&self) -> usize {
        self.0
    }

    pub fn head(&self) -> usize {
        self.1
    }
}

/// Counts of input edges discarded while building a simple graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub struct GraphBuilder {
    vertex_count: usize,
    directed: bool,
    edges: Vec<Edge>,
    seen: HashSet<Edge>,
    report: DropReport,
}

impl GraphBuilder {
    pub fn new(vertex_count: usize, directed: bool) -> Self {
        Self {
            vertex_count,
            directed,
            edges: Vec::new(),
            seen: HashSet::new(),
            report: DropReport::default(),
        }
    }

    /// Adds an edge, returning `Ok(false)` when it was dropped as a loop or
    /// a duplicate.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        for v in [a, b] {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
        }
        if a == b {
            self.report.self_loops += 1;
            return Ok(false);
        }
        let e = if self.directed {
            Edge(a, b)
        } else {
            Edge::undirected(a, b)
        };
        if !self.seen.insert(e) {
            self.report.duplicates += 1;
            return Ok(false);
        }
        self.edges.push(e);
        Ok(true)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = if self.directed {
            Edge(a, b)
        } else {
            Edge::undirected(a, b)
        };
        self.seen.contains(&e)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn report(&self) -> DropReport {
        self.report
    }

    pub fn build(self) -> Graph {
        Graph::from_simple_edges(self.vertex_count, self.directed, self.edges)
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    directed: bool,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    index: HashMap<Edge, usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed
            && self.vertex_count() == other.vertex_count()
            && self.index.len() == other.index.len()
            && self.edges.iter().all(|e| other.index.contains_key(e))
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a simple graph, silently dropping loops and duplicates.
    pub fn from_edges<I>(vertex_count: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(vertex_count, directed);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Edges must already be simple and normalized.
    fn from_simple_edges(vertex_count: usize, directed: bool, edges: Vec<Edge>) -> Self {
        let mut out_adj = vec![Vec::new(); vertex_count];
        let mut in_adj = if directed {
            vec![Vec::new(); vertex_count]
        } else {
            Vec::new()
        };
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &Edge(a, b)) in edges.iter().enumerate() {
            out_adj[a].push(b);
            if directed {
                in_adj[b].push(a);
            } else {
                out_adj[b].push(a);
            }
            index.insert(Edge(a, b), i);
        }
        Self {
            directed,
            edges,
            out_adj,
            in_adj,
            index,
        }
    }

    pub fn empty(vertex_count: usize, directed: bool) -> Self {
        Self::from_simple_edges(vertex_count, directed, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    pub(crate) fn require_undirected(&self) -> Result<()> {
        if self.directed {
            Err(Error::Directedness {
                expected: "undirected",
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_directed(&self) -> Result<()> {
        if self.directed {
            Ok(())
        } else {
            Err(Error::Directedness {
                expected: "directed",
            })
        }
    }

    /// Neighbors of `v` in an undirected graph, out-neighbors in a directed one.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v`; empty for undirected graphs.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        if self.directed {
            &self.in_adj[v]
        } else {
            &[]
        }
    }

    /// Neighbors ignoring direction. Reciprocal pairs show up twice.
    pub fn weak_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_adj[v].iter().chain(self.in_neighbors(v)).copied()
    }

    /// Number of incident edges. For directed graphs this is in + out.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    pub(crate) fn degree_unchecked(&self, v: usize) -> usize {
        self.out_adj[v].len() + self.in_neighbors(v).len()
    }

    /// `(in, out)` degree pair. In an undirected graph both equal the degree.
    pub fn in_out_degree(&self, v: usize) -> Result<(usize, usize)> {
        self.check_vertex(v)?;
        if self.directed {
            Ok((self.in_adj[v].len(), self.out_adj[v].len()))
        } else {
            let d = self.out_adj[v].len();
            Ok((d, d))
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .map(|v| self.degree_unchecked(v))
            .collect()
    }

    pub fn degree_vector(&self) -> DegreeVector {
        DegreeVector {
            degrees: self.degrees(),
        }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree_unchecked(v))
            .max()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// Position of the edge in [`Graph::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = if self.directed {
            Edge(a, b)
        } else {
            Edge::undirected(a, b)
        };
        self.index.get(&e).copied()
    }

    pub(crate) fn require_edge(&self, e: Edge) -> Result<Edge> {
        let canon = if self.directed {
            e
        } else {
            Edge::undirected(e.0, e.1)
        };
        if self.index.contains_key(&canon) {
            Ok(canon)
        } else {
            Err(Error::EdgeNotFound(e))
        }
    }

    /// Weakly connected components, each sorted, in order of their smallest
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for w in self.weak_neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertex set of the largest weakly connected component. Ties go to the
    /// component holding the smallest vertex id. Empty for the empty graph.
    pub fn largest_connected_component(&self) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for comp in self.components() {
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0
            && self.largest_connected_component().len() == self.vertex_count()
    }

    /// Breadth-first hop counts from `source` to every vertex, ignoring edge
    /// direction. Unreachable vertices get [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<u32>> {
        self.check_vertex(source)?;
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let next = dist[v] + 1;
            for w in self.weak_neighbors(v) {
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn hop_distances(&self, source: usize, targets: &[usize]) -> Result<HashMap<usize, u32>> {
        for &t in targets {
            self.check_vertex(t)?;
        }
        let dist = self.bfs_distances(source)?;
        Ok(targets.iter().map(|&t| (t, dist[t])).collect())
    }

    /// Drops edge directions. A reciprocal pair `a -> b`, `b -> a` becomes a
    /// single undirected edge. Undirected input is returned unchanged.
    pub fn collapse_to_undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut b = GraphBuilder::new(self.vertex_count(), false);
        for &Edge(u, v) in &self.edges {
            b.add_edge(u, v).expect("vertex ids already validated");
        }
        b.build()
    }

    /// Subgraph induced by `vertices`, relabeled densely in the given order.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if new_id[v] != usize::MAX {
                return Err(invalid(format!("vertex {v} listed twice")));
            }
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new_id[e.0] != usize::MAX && new_id[e.1] != usize::MAX)
            .map(|e| (new_id[e.0], new_id[e.1]));
        let g = Graph::from_edges(vertices.len(), self.directed, edges)?;
        Ok((g, vertices.to_vec()))
    }

    /// Applies the vertex permutation `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.vertex_count() {
            return Err(invalid("permutation length differs from vertex count"));
        }
        let mut hit = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut hit[p], true) {
                return Err(invalid("not a permutation"));
            }
        }
        Graph::from_edges(
            self.vertex_count(),
            self.directed,
            self.edges.iter().map(|e| (perm[e.0], perm[e.1])),
        )
    }

    /// Same vertex set with some edges removed, keeping edge order.
    pub fn without_edges(&self, removed: &HashSet<Edge>) -> Graph {
        let kept = self
            .edges
            .iter()
            .filter(|e| !removed.contains(e))
            .copied()
            .collect();
        Graph::from_simple_edges(self.vertex_count(), self.directed, kept)
    }
}

/// Per-vertex degrees with excess-degree access.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVector {
    pub degrees: Vec<usize>,
}

impl DegreeVector {
    /// `degree - 1`; `None` for isolated vertices, whose excess degree is
    /// undefined.
    pub fn excess_degree(&self, v: usize) -> Option<usize> {
        self.degrees.get(v).and_then(|d| d.checked_sub(1))
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Degree multiset as a sorted vector.
    pub fn sorted(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, false, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, false, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(
            n,
            false,
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))),
        )
        .unwrap()
    }

    /// Center 0 with `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, false, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
    pub fn barbell3() -> Graph {
        Graph::from_edges(
            6,
            false,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap()
    }
}
