//! Cut vertices, cut edges (bridges), blocks and pendant paths.
//!
//! One lowpoint DFS per component yields all three cut structures. Trivial
//! blocks (isolated vertices) carry no edges and are not listed.

use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::graph::{bits, Edge, Graph, MAX_N};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutStructure {
    /// Sorted.
    pub cut_vertices: Vec<usize>,
    /// Sorted.
    pub cut_edges: Vec<Edge>,
    /// Edge sets of the maximal biconnected subgraphs, each sorted, listed
    /// by smallest edge.
    pub blocks: Vec<Vec<Edge>>,
}

impl CutStructure {
    /// Vertex set of a block as a bitset.
    pub fn block_vertices(block: &[Edge]) -> u64 {
        block.iter().fold(0, |m, e| m | 1 << e.u | 1 << e.v)
    }
}

struct Lowpoint<'a> {
    g: &'a Graph,
    disc: [u8; MAX_N],
    low: [u8; MAX_N],
    timer: u8,
    cut: u64,
    bridges: usize,
    bridge_list: Option<Vec<Edge>>,
    stack: Vec<Edge>,
    blocks: Option<Vec<Vec<Edge>>>,
}

impl<'a> Lowpoint<'a> {
    fn new(g: &'a Graph, collect: bool) -> Self {
        Lowpoint {
            g,
            disc: [0; MAX_N],
            low: [0; MAX_N],
            timer: 0,
            cut: 0,
            bridges: 0,
            bridge_list: collect.then(Vec::new),
            stack: Vec::new(),
            blocks: collect.then(Vec::new),
        }
    }

    fn run(mut self) -> Self {
        for s in 0..self.g.n() {
            if self.disc[s] == 0 {
                self.visit(s, usize::MAX);
            }
        }
        self
    }

    // Recursion depth is bounded by MAX_N.
    fn visit(&mut self, u: usize, parent: usize) {
        self.timer += 1;
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        let mut children = 0;
        for v in bits(self.g.neighbors(u)) {
            if self.disc[v] == 0 {
                children += 1;
                if self.blocks.is_some() {
                    self.stack.push(Edge {
                        u: u.min(v),
                        v: u.max(v),
                    });
                }
                self.visit(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] > self.disc[u] {
                    self.bridges += 1;
                    if let Some(list) = &mut self.bridge_list {
                        list.push(Edge {
                            u: u.min(v),
                            v: u.max(v),
                        });
                    }
                }
                if self.low[v] >= self.disc[u] {
                    if parent != usize::MAX {
                        self.cut |= 1 << u;
                    }
                    if let Some(blocks) = &mut self.blocks {
                        let tree_edge = Edge {
                            u: u.min(v),
                            v: u.max(v),
                        };
                        let mut block = Vec::new();
                        while let Some(e) = self.stack.pop() {
                            block.push(e);
                            if e == tree_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            } else if v != parent && self.disc[v] < self.disc[u] {
                if self.blocks.is_some() {
                    self.stack.push(Edge {
                        u: u.min(v),
                        v: u.max(v),
                    });
                }
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
        if parent == usize::MAX && children > 1 {
            self.cut |= 1 << u;
        }
    }
}

pub fn cut_structure(g: &Graph) -> CutStructure {
    let dfs = Lowpoint::new(g, true).run();
    let mut cut_edges = dfs.bridge_list.unwrap_or_default();
    cut_edges.sort_unstable();
    let mut blocks = dfs.blocks.unwrap_or_default();
    blocks.sort_unstable();
    CutStructure {
        cut_vertices: bits(dfs.cut).collect(),
        cut_edges,
        blocks,
    }
}

/// `(cut vertices, cut edges)` without allocating.
pub fn cut_counts(g: &Graph) -> (usize, usize) {
    let dfs = Lowpoint::new(g, false).run();
    (dfs.cut.count_ones() as usize, dfs.bridges)
}

pub fn count_cut_vertices(g: &Graph) -> usize {
    cut_counts(g).0
}

pub fn count_cut_edges(g: &Graph) -> usize {
    cut_counts(g).1
}

/// A maximal path hanging off a vertex of degree at least three whose
/// other vertices have no edges leaving the path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantPath {
    pub anchor: usize,
    /// From the anchor's neighbour out to the degree-1 end.
    pub path_vertices: Vec<usize>,
}

impl PendantPath {
    pub fn len(&self) -> usize {
        self.path_vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path_vertices.is_empty()
    }
}

/// All maximal pendant paths, ordered by anchor then first vertex.
pub fn pendant_paths(g: &Graph) -> Vec<PendantPath> {
    let mut out = Vec::new();
    for anchor in (0..g.n()).filter(|&a| g.deg(a) >= 3) {
        for first in bits(g.neighbors(anchor)) {
            if let Some(path) = walk_pendant(g, anchor, first) {
                out.push(PendantPath {
                    anchor,
                    path_vertices: path,
                });
            }
        }
    }
    out
}

/// Follow degree-2 vertices away from `anchor` starting at `first`;
/// `Some` if the walk ends at a degree-1 vertex.
pub(crate) fn walk_pendant(g: &Graph, anchor: usize, first: usize) -> Option<Vec<usize>> {
    let mut path = vec![first];
    let (mut prev, mut cur) = (anchor, first);
    loop {
        match g.deg(cur) {
            1 => return Some(path),
            2 => {
                let next = (g.neighbors(cur) & !(1 << prev)).trailing_zeros() as usize;
                if next == anchor || path.contains(&next) {
                    return None;
                }
                path.push(next);
                prev = cur;
                cur = next;
            }
            _ => return None,
        }
    }
}

/// Whether `block` (a block of `g`) induces a clique.
pub fn is_block_complete(g: &Graph, block: &[Edge]) -> Result<bool, StructureError> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    if !cut_structure(g).blocks.contains(&sorted) {
        return Err(StructureError::NotABlock);
    }
    let verts = CutStructure::block_vertices(&sorted);
    let k = verts.count_ones() as usize;
    Ok(sorted.len() == k * (k - 1) / 2)
}
