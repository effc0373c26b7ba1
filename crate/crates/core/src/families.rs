//! Named graphs and the two extremal families.
//!
//! * `G(n,k)`: the clique `K_{n-k}` with `k` further vertices spread over
//!   pendant paths of almost equal length, one path per clique vertex. It
//!   has exactly `k` cut vertices.
//! * `Ḡ(n,k)`: the clique `K_{n-k}` with `k` pendant vertices on a single
//!   clique vertex. It has exactly `k` cut edges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ExtremalError;
use crate::graph::Graph;
use crate::rational::Rational;

pub fn complete_graph(n: usize) -> Result<Graph, ExtremalError> {
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v, true);
        }
    }
    Ok(g)
}

pub fn path_graph(n: usize) -> Result<Graph, ExtremalError> {
    Ok(Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))?)
}

pub fn cycle_graph(n: usize) -> Result<Graph, ExtremalError> {
    if n < 3 {
        return Err(ExtremalError::Range {
            family: "cycle",
            range: "n >= 3",
            n,
            k: 0,
        });
    }
    let mut g = path_graph(n)?;
    g.set_edge(0, n - 1, true);
    Ok(g)
}

/// `K_{1,n-1}` centred at vertex 0.
pub fn star_graph(n: usize) -> Result<Graph, ExtremalError> {
    Ok(Graph::from_edges(n, (1..n).map(|v| (0, v)))?)
}

/// Which structural count a family fixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Connected graphs with `k` cut vertices; maximiser `G(n,k)`.
    CutVertex,
    /// Connected graphs with `k` cut edges; maximiser `Ḡ(n,k)`.
    CutEdge,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::CutVertex => "cut-vertex",
            Family::CutEdge => "cut-edge",
        }
    }

    /// Whether the extremal construction is defined (and realises `k`).
    pub fn in_range(self, n: usize, k: usize) -> bool {
        match self {
            Family::CutVertex => n >= 2 && k + 2 <= n,
            Family::CutEdge => n >= 3 && k + 3 <= n,
        }
    }

    /// The candidate maximiser for `(n, k)`.
    pub fn extremal_graph(self, n: usize, k: usize) -> Result<Graph, ExtremalError> {
        match self {
            Family::CutVertex => build_g_nk(n, k),
            Family::CutEdge => build_gbar_nk(n, k),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cut-vertex" | "gnk" => Ok(Family::CutVertex),
            "cut-edge" | "gbar" => Ok(Family::CutEdge),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

/// A validated `(n, k, family)` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    n: usize,
    k: usize,
    family: Family,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, k: usize) -> Result<FamilySpec, ExtremalError> {
        if !family.in_range(n, k) {
            return Err(range_error(family, n, k));
        }
        Ok(FamilySpec { n, k, family })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn build(&self) -> Graph {
        self.family
            .extremal_graph(self.n, self.k)
            .expect("range checked on construction")
    }
}

fn range_error(family: Family, n: usize, k: usize) -> ExtremalError {
    match family {
        Family::CutVertex => ExtremalError::Range {
            family: "G(n,k)",
            range: "n >= 2 and 0 <= k <= n-2",
            n,
            k,
        },
        Family::CutEdge => ExtremalError::Range {
            family: "Ḡ(n,k)",
            range: "n >= 3 and 0 <= k <= n-3",
            n,
            k,
        },
    }
}

/// Lengths (in vertices, anchor excluded) of the pendant paths of `G(n,k)`
/// in clique-vertex order. Longer paths go to lower clique vertices.
pub fn g_nk_path_lengths(n: usize, k: usize) -> Result<Vec<usize>, ExtremalError> {
    if !Family::CutVertex.in_range(n, k) {
        return Err(range_error(Family::CutVertex, n, k));
    }
    let c = n - k;
    let (q, r) = (k / c, k % c);
    Ok((0..c).map(|i| q + usize::from(i < r)).collect())
}

/// `G(n,k)`: clique on `0..n-k`, then each clique vertex's path in order.
pub fn build_g_nk(n: usize, k: usize) -> Result<Graph, ExtremalError> {
    let lengths = g_nk_path_lengths(n, k)?;
    let c = lengths.len();
    let mut g = complete_graph(c)?;
    for (anchor, &len) in lengths.iter().enumerate() {
        let mut prev = anchor;
        for _ in 0..len {
            let v = g.push_vertex()?;
            g.set_edge(prev, v, true);
            prev = v;
        }
    }
    debug_assert_eq!(g.n(), n);
    Ok(g)
}

/// `Ḡ(n,k)`: clique on `0..n-k` with pendants `n-k..n` on vertex 0.
pub fn build_gbar_nk(n: usize, k: usize) -> Result<Graph, ExtremalError> {
    if !Family::CutEdge.in_range(n, k) {
        return Err(range_error(Family::CutEdge, n, k));
    }
    let mut g = complete_graph(n - k)?;
    for _ in 0..k {
        let v = g.push_vertex()?;
        g.set_edge(0, v, true);
    }
    Ok(g)
}

/// Closed-form RDD of `Ḡ(n,k)`:
/// `n³ − (5k/2 + 2)n² + (2k² + 11k/2 + 1)n − (k³/2 + 2k² + 5k/2)`.
///
/// Accepted for `k <= n-2`: the clique `K_{n-k}` with `k` pendants on one
/// vertex is still well defined there (`k = n-2` gives a star), even though
/// it then has `n-1` cut edges rather than `k`.
pub fn closed_form_gbar(n: usize, k: usize) -> Result<Rational, ExtremalError> {
    if n < 2 || k + 2 > n {
        return Err(ExtremalError::Range {
            family: "closed form for Ḡ(n,k)",
            range: "n >= 2 and 0 <= k <= n-2",
            n,
            k,
        });
    }
    let (n, k) = (n as i128, k as i128);
    // doubled to clear the halves
    let twice = 2 * n * n * n - (5 * k + 4) * n * n + (4 * k * k + 11 * k + 2) * n
        - (k * k * k + 4 * k * k + 5 * k);
    Ok(Rational::new(twice, 2).expect("nonzero denominator"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::rdd;
    use crate::structure::{count_cut_edges, count_cut_vertices};

    #[test]
    fn named_graphs() {
        assert_eq!(complete_graph(1).unwrap(), path_graph(1).unwrap());
        assert_eq!(complete_graph(1).unwrap().n(), 1);
        let p4 = path_graph(4).unwrap();
        let edges: Vec<_> = p4.edges().map(|e| (e.u, e.v)).collect();
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(cycle_graph(3).unwrap(), complete_graph(3).unwrap());
        assert!(cycle_graph(2).is_err());
        assert!(complete_graph(65).is_err());
        assert_eq!(path_graph(0).unwrap().n(), 0);
    }

    #[test]
    fn g_nk_endpoints() {
        for n in 2..10 {
            assert_eq!(build_g_nk(n, 0).unwrap(), complete_graph(n).unwrap());
            // the clique K_2 with its two paths is a path, relabelled
            let p = build_g_nk(n, n - 2).unwrap();
            assert_eq!(p.edge_count(), n - 1);
            assert_eq!(p.max_degree(), 2.min(n - 1));
            assert!(p.is_connected());
        }
        assert!(build_g_nk(1, 0).is_err());
        assert!(build_g_nk(5, 4).is_err());
    }

    #[test]
    fn g_62_shape() {
        let g = build_g_nk(6, 2).unwrap();
        assert_eq!(g.degrees(), vec![4, 4, 3, 3, 1, 1]);
        assert!(g.has_edge(0, 4) && g.has_edge(1, 5));
        assert_eq!(count_cut_vertices(&g), 2);
    }

    #[test]
    fn path_lengths_almost_equal() {
        assert_eq!(g_nk_path_lengths(9, 5).unwrap(), vec![2, 1, 1, 1]);
        assert_eq!(g_nk_path_lengths(5, 3).unwrap(), vec![2, 1]);
        for n in 2..=20 {
            for k in 0..=n - 2 {
                let l = g_nk_path_lengths(n, k).unwrap();
                assert_eq!(l.iter().sum::<usize>(), k);
                assert!(l.iter().max().unwrap() - l.iter().min().unwrap() <= 1);
            }
        }
    }

    #[test]
    fn gbar_examples() {
        assert_eq!(build_gbar_nk(5, 0).unwrap(), complete_graph(5).unwrap());
        let paw = build_gbar_nk(4, 1).unwrap();
        assert_eq!(rdd(&paw).unwrap(), Rational::integer(21));
        let g = build_gbar_nk(5, 1).unwrap();
        assert_eq!(rdd(&g).unwrap(), Rational::integer(50));
        assert_eq!(count_cut_edges(&build_gbar_nk(6, 2).unwrap()), 2);
        assert!(build_gbar_nk(5, 3).is_err());
        assert!(build_gbar_nk(2, 0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        for n in 3..15i128 {
            assert_eq!(
                closed_form_gbar(n as usize, 0).unwrap(),
                Rational::integer(n * (n - 1) * (n - 1))
            );
        }
        assert_eq!(closed_form_gbar(3, 0).unwrap(), Rational::integer(12));
        assert_eq!(closed_form_gbar(3, 1).unwrap(), Rational::integer(7));
        assert_eq!(closed_form_gbar(5, 1).unwrap(), Rational::integer(50));
        // star K_{1,n-1}: the clique K_2 with n-2 pendants at one end
        let star = star_graph(7).unwrap();
        assert_eq!(closed_form_gbar(7, 5).unwrap(), rdd(&star).unwrap());
        assert!(closed_form_gbar(4, 3).is_err());
        assert!(closed_form_gbar(1, 0).is_err());
    }

    #[test]
    fn family_spec_ranges() {
        assert!(FamilySpec::new(Family::CutVertex, 5, 3).is_ok());
        assert!(FamilySpec::new(Family::CutVertex, 5, 4).is_err());
        assert!(FamilySpec::new(Family::CutEdge, 5, 2).is_ok());
        assert!(FamilySpec::new(Family::CutEdge, 5, 3).is_err());
        let s = FamilySpec::new(Family::CutEdge, 6, 2).unwrap();
        assert_eq!(s.build(), build_gbar_nk(6, 2).unwrap());
        assert_eq!("gbar".parse::<Family>().unwrap(), Family::CutEdge);
    }
}
