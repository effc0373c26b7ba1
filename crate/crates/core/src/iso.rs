//! Exact isomorphism testing for small graphs.
//!
//! Vertices of both graphs are coloured jointly, first by degree and
//! distance profile, then by colour refinement over neighbour colours. A
//! backtracking search then maps vertices colour-to-colour, checking
//! adjacency against every vertex already placed.

use std::collections::BTreeMap;

use crate::graph::{bits, Graph};
use crate::metrics::bfs_distances;

/// Initial colour: degree followed by the number of vertices at each
/// distance (unreachable counted last).
fn profile(g: &Graph) -> Vec<Vec<u32>> {
    let dist = bfs_distances(g);
    let n = g.n();
    (0..n)
        .map(|u| {
            let mut counts = vec![0u32; n + 2];
            counts[0] = g.deg(u) as u32;
            for v in 0..n {
                let slot = dist.get(u, v).map_or(n + 1, |d| d as usize);
                counts[slot.min(n + 1)] += 1;
            }
            counts
        })
        .collect()
}

/// Stable joint colouring of two graphs of the same order.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut table: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let colour = |sig: Vec<u32>, table: &mut BTreeMap<Vec<u32>, usize>| {
        let next = table.len();
        *table.entry(sig).or_insert(next)
    };
    let mut cg: Vec<usize> = profile(g)
        .into_iter()
        .map(|s| colour(s, &mut table))
        .collect();
    let mut ch: Vec<usize> = profile(h)
        .into_iter()
        .map(|s| colour(s, &mut table))
        .collect();

    let classes = |c: &[usize], d: &[usize]| {
        let mut all: Vec<usize> = c.iter().chain(d).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut count = classes(&cg, &ch);
    loop {
        let mut table: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let step = |gr: &Graph, c: &[usize], table: &mut BTreeMap<Vec<u32>, usize>| {
            (0..gr.n())
                .map(|u| {
                    let mut sig: Vec<u32> = bits(gr.neighbors(u)).map(|v| c[v] as u32).collect();
                    sig.sort_unstable();
                    sig.insert(0, c[u] as u32);
                    let next = table.len();
                    *table.entry(sig).or_insert(next)
                })
                .collect::<Vec<_>>()
        };
        let ng = step(g, &cg, &mut table);
        let nh = step(h, &ch, &mut table);
        let new_count = classes(&ng, &nh);
        cg = ng;
        ch = nh;
        if new_count == count {
            return (cg, ch);
        }
        count = new_count;
    }
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// A bijection `map` with `uv ∈ E(g) ⇔ map[u]map[v] ∈ E(h)`, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }

    let (cg, ch) = refine(g, h);
    let mut sg = cg.clone();
    let mut sh = ch.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }

    // Place vertices from the smallest colour classes first, keeping each
    // next vertex adjacent to something already placed where possible.
    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let frontier: u64 = order.iter().fold(0, |m, &u: &usize| m | g.neighbors(u)) & !placed;
        let pool = if frontier != 0 {
            frontier
        } else {
            g.vertex_mask() & !placed
        };
        let next = bits(pool)
            .min_by_key(|&u| (class_size[&cg[u]], std::cmp::Reverse(g.deg(u)), u))
            .expect("pool is nonempty");
        order.push(next);
        placed |= 1 << next;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    if extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    'cand: for x in bits(h.vertex_mask() & !*used) {
        if ch[x] != cg[u] {
            continue;
        }
        for &w in &order[..depth] {
            if g.has_edge(u, w) != h.has_edge(x, map[w]) {
                continue 'cand;
            }
        }
        map[u] = x;
        *used |= 1 << x;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << x);
        map[u] = usize::MAX;
    }
    false
}
