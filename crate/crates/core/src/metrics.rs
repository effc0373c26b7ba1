//! Distance-degree indices: reciprocal degree distance, Wiener, Harary and
//! degree distance.
//!
//! Pairs in different components are treated as infinitely far apart, so
//! their reciprocal is zero. The reciprocal indices (RDD, Harary) are
//! therefore defined for every graph, while the Wiener index and the degree
//! distance reject disconnected input.
//!
//! [`rdd`] sums over unordered pairs with a common denominator
//! `lcm(1..=diameter)`, staying in integers until the end.
//! [`rdd_via_transmission`] accumulates `Σ deg(u)·D(u)` in [`Rational`]s,
//! where `D(u)` is the reciprocal transmission of `u`. The two routes are
//! independent and must agree exactly.

use serde::{Deserialize, Serialize};

use crate::error::{ArithmeticError, MetricsError};
use crate::graph::{bits, Graph};
use crate::rational::{lcm_upto, Rational};

/// Marker for pairs in different components.
pub const UNREACHABLE: u8 = u8::MAX;

/// All-pairs hop distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u8>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hop count, or `None` when `u` and `v` are in different components.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u8> {
        match self.dist[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    #[inline]
    pub fn raw(&self, u: usize, v: usize) -> u8 {
        self.dist[u * self.n + v]
    }

    /// Largest finite distance (0 for graphs without edges).
    pub fn max_finite(&self) -> u8 {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }
}

/// Breadth-first search from every vertex, one bitset frontier per level.
pub fn bfs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = vec![UNREACHABLE; n * n];
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut level = 0u8;
        while frontier != 0 {
            level += 1;
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= g.neighbors(v);
            }
            next &= !seen;
            for v in bits(next) {
                row[v] = level;
            }
            seen |= next;
            frontier = next;
        }
    }
    DistanceMatrix { n, dist }
}

/// `D(u) = Σ_{v ≠ u} 1/d(u,v)`, unreachable vertices contributing zero.
pub fn reciprocal_transmission(
    g: &Graph,
    u: usize,
    dist: &DistanceMatrix,
) -> Result<Rational, MetricsError> {
    g.check_vertex(u)?;
    let mut total = Rational::ZERO;
    for v in (0..g.n()).filter(|&v| v != u) {
        if let Some(d) = dist.get(u, v) {
            total = total.checked_add(Rational::recip_of(d as i128))?;
        }
    }
    Ok(total)
}

/// Reciprocal degree distance `Σ_{u<v} (deg u + deg v) / d(u,v)`.
pub fn rdd(g: &Graph) -> Result<Rational, MetricsError> {
    rdd_with(g, &bfs_distances(g))
}

pub fn rdd_with(g: &Graph, dist: &DistanceMatrix) -> Result<Rational, MetricsError> {
    let scale = lcm_upto(dist.max_finite() as usize);
    let mut acc: i128 = 0;
    for u in 0..g.n() {
        let du = g.deg(u) as i128;
        for v in u + 1..g.n() {
            let d = dist.raw(u, v);
            if d == UNREACHABLE {
                continue;
            }
            let term = (du + g.deg(v) as i128) * (scale / d as i128);
            acc = acc.checked_add(term).ok_or(ArithmeticError::Overflow)?;
        }
    }
    Ok(Rational::new(acc, scale)?)
}

/// `Σ_u deg(u)·D(u)`; equal to [`rdd`] on every graph.
pub fn rdd_via_transmission(g: &Graph) -> Result<Rational, MetricsError> {
    let dist = bfs_distances(g);
    let mut total = Rational::ZERO;
    for u in 0..g.n() {
        let d = g.deg(u);
        if d == 0 {
            continue;
        }
        let t = reciprocal_transmission(g, u, &dist)?;
        total = total.checked_add(t.checked_mul_int(d as i128)?)?;
    }
    Ok(total)
}

pub fn wiener(g: &Graph) -> Result<Rational, MetricsError> {
    wiener_with(g, &bfs_distances(g))
}

pub fn wiener_with(g: &Graph, dist: &DistanceMatrix) -> Result<Rational, MetricsError> {
    let mut acc: i128 = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let d = dist.get(u, v).ok_or(MetricsError::Disconnected {
                index: "Wiener index",
            })?;
            acc += d as i128;
        }
    }
    Ok(Rational::integer(acc))
}

pub fn harary(g: &Graph) -> Result<Rational, MetricsError> {
    harary_with(g, &bfs_distances(g))
}

pub fn harary_with(g: &Graph, dist: &DistanceMatrix) -> Result<Rational, MetricsError> {
    let scale = lcm_upto(dist.max_finite() as usize);
    let mut acc: i128 = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if let Some(d) = dist.get(u, v) {
                acc += scale / d as i128;
            }
        }
    }
    Ok(Rational::new(acc, scale)?)
}

pub fn degree_distance(g: &Graph) -> Result<Rational, MetricsError> {
    degree_distance_with(g, &bfs_distances(g))
}

pub fn degree_distance_with(g: &Graph, dist: &DistanceMatrix) -> Result<Rational, MetricsError> {
    let mut acc: i128 = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let d = dist.get(u, v).ok_or(MetricsError::Disconnected {
                index: "degree distance",
            })?;
            acc += (g.deg(u) + g.deg(v)) as i128 * d as i128;
        }
    }
    Ok(Rational::integer(acc))
}

/// The four indices computed from one shared distance matrix. Wiener and
/// degree distance are `None` for disconnected graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub n: usize,
    pub edges: usize,
    pub rdd: Rational,
    pub harary: Rational,
    pub wiener: Option<Rational>,
    pub dd: Option<Rational>,
}

pub fn index_report(g: &Graph) -> Result<IndexReport, MetricsError> {
    let dist = bfs_distances(g);
    let connected = dist.is_connected();
    Ok(IndexReport {
        n: g.n(),
        edges: g.edge_count(),
        rdd: rdd_with(g, &dist)?,
        harary: harary_with(g, &dist)?,
        wiener: connected.then(|| wiener_with(g, &dist)).transpose()?,
        dd: connected
            .then(|| degree_distance_with(g, &dist))
            .transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle_graph, path_graph};

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn two_k2() -> Graph {
        Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn bfs_examples() {
        let d = bfs_distances(&path_graph(4).unwrap());
        assert_eq!(d.get(0, 3), Some(3));
        assert_eq!(d.get(0, 2), Some(2));
        assert_eq!(d.get(1, 2), Some(1));
        let d = bfs_distances(&complete_graph(5).unwrap());
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(d.get(u, v), Some((u != v) as u8));
            }
        }
        let d = bfs_distances(&two_k2());
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.get(2, 3), Some(1));
        assert!(!d.is_connected());
    }

    #[test]
    fn transmission_examples() {
        let p3 = path_graph(3).unwrap();
        let d = bfs_distances(&p3);
        assert_eq!(
            reciprocal_transmission(&p3, 1, &d).unwrap(),
            Rational::integer(2)
        );
        assert_eq!(reciprocal_transmission(&p3, 0, &d).unwrap(), r(3, 2));
        let k6 = complete_graph(6).unwrap();
        assert_eq!(
            reciprocal_transmission(&k6, 4, &bfs_distances(&k6)).unwrap(),
            Rational::integer(5)
        );
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            reciprocal_transmission(&g, 2, &bfs_distances(&g)).unwrap(),
            Rational::ZERO
        );
        assert!(reciprocal_transmission(&g, 3, &bfs_distances(&g)).is_err());
    }

    #[test]
    fn rdd_examples() {
        assert_eq!(rdd(&path_graph(3).unwrap()).unwrap(), Rational::integer(7));
        assert_eq!(
            rdd(&complete_graph(4).unwrap()).unwrap(),
            Rational::integer(36)
        );
        assert_eq!(rdd(&two_k2()).unwrap(), Rational::integer(4));
        assert_eq!(
            rdd(&cycle_graph(4).unwrap()).unwrap(),
            Rational::integer(20)
        );
        assert_eq!(rdd(&path_graph(4).unwrap()).unwrap(), r(41, 3));
        assert_eq!(rdd(&Graph::new(0).unwrap()).unwrap(), Rational::ZERO);
    }

    #[test]
    fn transmission_route_examples() {
        assert_eq!(
            rdd_via_transmission(&path_graph(3).unwrap()).unwrap(),
            Rational::integer(7)
        );
        assert_eq!(
            rdd_via_transmission(&complete_graph(4).unwrap()).unwrap(),
            Rational::integer(36)
        );
        assert_eq!(
            rdd_via_transmission(&Graph::new(5).unwrap()).unwrap(),
            Rational::ZERO
        );
    }

    #[test]
    fn wiener_harary_dd_examples() {
        let p4 = path_graph(4).unwrap();
        assert_eq!(wiener(&p4).unwrap(), Rational::integer(10));
        assert_eq!(
            wiener(&complete_graph(3).unwrap()).unwrap(),
            Rational::integer(3)
        );
        assert!(matches!(
            wiener(&two_k2()),
            Err(MetricsError::Disconnected { .. })
        ));

        assert_eq!(harary(&p4).unwrap(), r(13, 3));
        assert_eq!(
            harary(&complete_graph(3).unwrap()).unwrap(),
            Rational::integer(3)
        );
        assert_eq!(harary(&path_graph(3).unwrap()).unwrap(), r(5, 2));

        assert_eq!(
            degree_distance(&path_graph(3).unwrap()).unwrap(),
            Rational::integer(10)
        );
        assert_eq!(
            degree_distance(&complete_graph(3).unwrap()).unwrap(),
            Rational::integer(12)
        );
        assert_eq!(degree_distance(&p4).unwrap(), Rational::integer(28));
        assert!(degree_distance(&two_k2()).is_err());
    }

    #[test]
    fn report_examples() {
        let rep = index_report(&path_graph(3).unwrap()).unwrap();
        assert_eq!(rep.rdd, Rational::integer(7));
        assert_eq!(rep.wiener, Some(Rational::integer(4)));
        assert_eq!(rep.harary, r(5, 2));
        assert_eq!(rep.dd, Some(Rational::integer(10)));

        let rep = index_report(&complete_graph(4).unwrap()).unwrap();
        assert_eq!(
            (rep.rdd, rep.wiener, rep.harary, rep.dd),
            (
                Rational::integer(36),
                Some(Rational::integer(6)),
                Rational::integer(6),
                Some(Rational::integer(36))
            )
        );

        let rep = index_report(&Graph::from_edges(3, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(rep.rdd, Rational::integer(2));
        assert_eq!(rep.harary, Rational::ONE);
        assert_eq!(rep.wiener, None);
        assert_eq!(rep.dd, None);
    }

    #[test]
    fn large_path_stays_exact() {
        let p = path_graph(64).unwrap();
        assert_eq!(rdd(&p).unwrap(), rdd_via_transmission(&p).unwrap());
        let k = complete_graph(64).unwrap();
        assert_eq!(rdd(&k).unwrap(), Rational::integer(64 * 63 * 63));
    }
}
