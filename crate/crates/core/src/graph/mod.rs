//! Immutable simple undirected graphs and the structural metrics used as
//! hypotheses throughout the crate.

mod cycles;
mod io;
mod iso;
mod metrics;

pub use cycles::{cycle_census, triangles, CycleCensus};
pub use io::{read_edge_list, write_edge_list};
pub use iso::{are_isomorphic, is_vertex_transitive, vertex_orbits, DEFAULT_ORBIT_LIMIT};
pub use metrics::{bfs_distances, diameter, girth, metrics, Extent, Metrics};

use std::collections::VecDeque;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has {order} vertices, limit is {limit}")]
    SizeExceeded { order: usize, limit: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and the structure is never mutated after
/// construction; derived graphs are built as new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("size", &self.edge_count)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Builds a graph, rejecting loops, repeated edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        let g = Graph { adj, edge_count: count };
        debug_assert!(g.check_invariants());
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    /// Loops and out-of-range endpoints are still errors.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list: Vec<(Vertex, Vertex)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        list.sort_unstable();
        list.dedup();
        Self::from_edges(n, list)
    }

    fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let g = Graph { adj, edge_count };
        debug_assert!(g.check_invariants());
        g
    }

    pub fn check_invariants(&self) -> bool {
        let n = self.order();
        let mut total = 0;
        for (u, list) in self.adj.iter().enumerate() {
            total += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v >= n || v == u || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
        }
        total == 2 * self.edge_count
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Sorted degree sequence.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(k)` if every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> usize {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// True iff no two distinct vertices have `t` or more common neighbours,
    /// i.e. the graph contains no (not necessarily induced) `K_{2,t}`.
    pub fn is_k2t_free(&self, t: usize) -> bool {
        assert!(t >= 1, "t must be positive");
        // Count common neighbours of every pair through 2-paths.
        let n = self.order();
        let mut counts = vec![0usize; n];
        for u in 0..n {
            let mut touched = Vec::new();
            for &w in &self.adj[u] {
                for &v in &self.adj[w] {
                    if v > u {
                        if counts[v] == 0 {
                            touched.push(v);
                        }
                        counts[v] += 1;
                        if counts[v] >= t {
                            return false;
                        }
                    }
                }
            }
            for v in touched {
                counts[v] = 0;
            }
        }
        true
    }

    /// C4-free in the subgraph sense, which is the same as `K_{2,2}`-free.
    pub fn is_c4_free(&self) -> bool {
        self.is_k2t_free(2)
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.component_of(0).len() == self.order()
    }

    /// Vertices reachable from `s`, in BFS order.
    pub fn component_of(&self, s: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.order()];
        let mut order = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        order
    }

    /// A proper 2-colouring if one exists. Colour 0 is given to the lowest
    /// vertex of every component.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.order();
        let mut colour = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Spanning subgraph without the given edges (either orientation).
    /// Edges absent from the graph are ignored.
    pub fn without_edges<I>(&self, removed: I) -> Graph
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = self.adj.clone();
        for (u, v) in removed {
            if let Ok(i) = adj[u].binary_search(&v) {
                adj[u].remove(i);
                let j = adj[v].binary_search(&u).expect("adjacency is symmetric");
                adj[v].remove(j);
            }
        }
        Graph::from_sorted_adjacency(adj)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut adj = vec![Vec::new(); self.order()];
        for (u, v) in self.edges() {
            adj[perm[u]].push(perm[v]);
            adj[perm[v]].push(perm[u]);
        }
        adj.iter_mut().for_each(|l| l.sort_unstable());
        Graph::from_sorted_adjacency(adj)
    }

    /// Disjoint union, vertices of `other` shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + shift).collect()));
        Graph::from_sorted_adjacency(adj)
    }

    /// Adds a new vertex adjacent to each of `attach`.
    pub fn with_pendant(&self, attach: &[Vertex]) -> Graph {
        let new = self.order();
        let edges = self.edges().chain(attach.iter().map(|&a| (a, new)));
        Graph::from_edges(new + 1, edges).expect("attachment points are distinct existing vertices")
    }

    // Standard small graphs.

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::complete_bipartite(1, leaves)
    }

    /// Circulant graph on `Z_n` joining `i` and `i ± s` for each jump `s`.
    pub fn circulant(n: usize, jumps: &[usize]) -> Graph {
        let edges = (0..n).flat_map(|i| jumps.iter().map(move |&s| (i, (i + s) % n)));
        Graph::from_edges_dedup(n, edges.filter(|(u, v)| u != v)).unwrap()
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }
}
