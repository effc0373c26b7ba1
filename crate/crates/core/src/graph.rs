//! Simple undirected graphs on at most [`MAX_N`] vertices.
//!
//! Each vertex row is a single `u64` bitset, so neighbourhood queries,
//! degrees and frontier expansion are a handful of word operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_N: usize = 64;

/// Iterate the set bits of a word, lowest first.
#[inline]
pub fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonicalises the endpoint order. Loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::InvalidEdge {
                u: a,
                v: b,
                n: None,
            });
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Result of an edge insertion or deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeUpdate {
    pub graph: Graph,
    /// `true` when the graph already had (or lacked) the edge and nothing changed.
    pub unchanged: bool,
}

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_N],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_N {
            return Err(GraphError::Capacity { n });
        }
        Ok(Graph { n, adj: [0; MAX_N] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n)?;
        for (a, b) in edges {
            g.check_pair(a, b)?;
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    /// Build from raw adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_rows(rows: &[u64]) -> Result<Graph, GraphError> {
        let n = rows.len();
        let mut g = Graph::new(n)?;
        for (u, &row) in rows.iter().enumerate() {
            if row & !low_mask(n) != 0 || row & (1 << u) != 0 {
                return Err(GraphError::InvalidEdge {
                    u,
                    v: u,
                    n: Some(n),
                });
            }
            for v in bits(row) {
                if rows[v] & (1 << u) == 0 {
                    return Err(GraphError::InvalidEdge { u, v, n: Some(n) });
                }
            }
            g.adj[u] = row;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitset of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    /// Neighbourhood of `u` as a bitset. Panics if `u >= MAX_N`.
    #[inline]
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn degree(&self, u: usize) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        Ok(self.deg(u))
    }

    /// Unchecked degree, for hot loops over known-valid vertices.
    #[inline]
    pub fn deg(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.deg(u)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.deg(u)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.deg(u)).max().unwrap_or(0)
    }

    /// All edges in increasing `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n)
            .flat_map(move |u| bits(self.adj[u] & !low_mask(u + 1)).map(move |v| Edge { u, v }))
    }

    /// Returns a copy with `e` present.
    pub fn add_edge(&self, e: Edge) -> Result<EdgeUpdate, GraphError> {
        self.check_pair(e.u, e.v)?;
        let unchanged = self.has_edge(e.u, e.v);
        let mut graph = self.clone();
        graph.set_edge(e.u, e.v, true);
        Ok(EdgeUpdate { graph, unchanged })
    }

    /// Returns a copy with `e` absent.
    pub fn remove_edge(&self, e: Edge) -> Result<EdgeUpdate, GraphError> {
        self.check_pair(e.u, e.v)?;
        let unchanged = !self.has_edge(e.u, e.v);
        let mut graph = self.clone();
        graph.set_edge(e.u, e.v, false);
        Ok(EdgeUpdate { graph, unchanged })
    }

    /// In-place edge toggle used by constructors that own their graph.
    /// Both endpoints must be distinct and `< n`.
    #[inline]
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if present {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    /// Appends an isolated vertex and returns its index.
    pub fn push_vertex(&mut self) -> Result<usize, GraphError> {
        if self.n == MAX_N {
            return Err(GraphError::Capacity { n: MAX_N + 1 });
        }
        self.n += 1;
        Ok(self.n - 1)
    }

    /// Vertices reachable from `start` without leaving `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, as bitsets
    /// ordered by their lowest vertex.
    pub fn component_masks_within(&self, within: u64) -> Vec<u64> {
        let mut left = within & self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let s = left.trailing_zeros() as usize;
            let c = self.reach(s, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn component_count_within(&self, within: u64) -> usize {
        let mut left = within & self.vertex_mask();
        let mut count = 0;
        while left != 0 {
            let s = left.trailing_zeros() as usize;
            left &= !self.reach(s, left);
            count += 1;
        }
        count
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.component_masks_within(self.vertex_mask())
            .into_iter()
            .map(|m| bits(m).collect())
            .collect()
    }

    /// `true` for the empty graph and for any graph with one component.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Subgraph induced by the listed vertices; new vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(vertices.len())?;
        for (i, &a) in vertices.iter().enumerate() {
            self.check_vertex(a)?;
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// Graph with vertices renamed by `perm` (old `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n).expect("same order");
        for e in self.edges() {
            g.set_edge(perm[e.u], perm[e.v], true);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::new(self.n + other.n)?;
        g.adj[..self.n].copy_from_slice(self.rows());
        for (i, &row) in other.rows().iter().enumerate() {
            g.adj[self.n + i] = row << self.n;
        }
        Ok(g)
    }

    /// Attach `piece` by identifying its vertex `root` with our vertex `at`.
    /// The other piece vertices are appended in order; the returned vector
    /// gives the new index of every piece vertex.
    pub fn attach(
        &self,
        piece: &Graph,
        root: usize,
        at: usize,
    ) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_vertex(at)?;
        piece.check_vertex(root)?;
        let mut g = self.clone();
        let mut map = vec![usize::MAX; piece.n];
        for (i, slot) in map.iter_mut().enumerate() {
            *slot = if i == root { at } else { g.push_vertex()? };
        }
        for e in piece.edges() {
            g.set_edge(map[e.u], map[e.v], true);
        }
        Ok((g, map))
    }

    pub(crate) fn check_vertex(&self, u: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::InvalidVertex { u, n: self.n });
        }
        Ok(())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(), GraphError> {
        if a == b || a >= self.n || b >= self.n {
            return Err(GraphError::InvalidEdge {
                u: a,
                v: b,
                n: Some(self.n),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::codec::write_edge_list(self))
    }
}
