//! Slow, definitional re-implementations used as test oracles. Nothing here
//! shares code with the library beyond reading adjacency.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdd_core::Graph;

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Reduced fraction `(num, den)` with `den > 0`.
pub fn reduce(num: i128, den: i128) -> (i128, i128) {
    let g = gcd(num, den).max(1);
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

pub fn add(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    reduce(a.0 * b.1 + b.0 * a.1, a.1 * b.1)
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n())
        .map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

/// Floyd–Warshall hop distances; `None` for unreachable pairs.
pub fn floyd(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.n();
    let a = adjacency(g);
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for v in 0..n {
            if a[u][v] {
                d[u][v] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

pub fn degree(g: &Graph, u: usize) -> i128 {
    (0..g.n()).filter(|&v| g.has_edge(u, v)).count() as i128
}

/// The four indices summed pair by pair over Floyd–Warshall distances.
/// Wiener and degree distance are `None` when some pair is unreachable.
pub struct PairwiseIndices {
    pub rdd: (i128, i128),
    pub harary: (i128, i128),
    pub wiener: Option<i128>,
    pub dd: Option<i128>,
}

pub fn pairwise_indices(g: &Graph) -> PairwiseIndices {
    let d = floyd(g);
    let mut rdd = (0, 1);
    let mut harary = (0, 1);
    let mut wiener = Some(0);
    let mut dd = Some(0);
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let w = degree(g, u) + degree(g, v);
            match d[u][v] {
                Some(x) => {
                    let x = x as i128;
                    rdd = add(rdd, (w, x));
                    harary = add(harary, (1, x));
                    wiener = wiener.map(|s| s + x);
                    dd = dd.map(|s| s + w * x);
                }
                None => {
                    wiener = None;
                    dd = None;
                }
            }
        }
    }
    PairwiseIndices {
        rdd,
        harary,
        wiener,
        dd,
    }
}

/// Components by repeated depth-first search over the adjacency matrix,
/// ignoring vertices in `removed` and the edge `skip`.
pub fn count_components(g: &Graph, removed: &[usize], skip: Option<(usize, usize)>) -> usize {
    let n = g.n();
    let a = adjacency(g);
    let mut seen = vec![false; n];
    for &r in removed {
        seen[r] = true;
    }
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                let skipped = skip.is_some_and(|(p, q)| (x, y) == (p, q) || (x, y) == (q, p));
                if a[x][y] && !seen[y] && !skipped {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Vertices whose deletion increases the number of components.
pub fn brute_cut_vertices(g: &Graph) -> Vec<usize> {
    let base = count_components(g, &[], None);
    (0..g.n())
        .filter(|&v| count_components(g, &[v], None) > base)
        .collect()
}

/// Edges whose deletion increases the number of components.
pub fn brute_cut_edges(g: &Graph) -> Vec<(usize, usize)> {
    let base = count_components(g, &[], None);
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) && count_components(g, &[], Some((u, v))) > base {
                out.push((u, v));
            }
        }
    }
    out
}

/// Blocks as sorted edge lists: maximal vertex sets of size at least two
/// whose induced subgraph is connected and stays connected after deleting
/// any single vertex.
pub fn brute_blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut good: Vec<u32> = Vec::new();
    for s in 1u32..(1 << n) {
        if s.count_ones() < 2 {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let sub = g.induced(&verts).unwrap();
        let connected = count_components(&sub, &[], None) == 1;
        let no_cut =
            verts.len() == 2 || (0..verts.len()).all(|x| count_components(&sub, &[x], None) == 1);
        if connected && no_cut {
            good.push(s);
        }
    }
    let maximal: Vec<u32> = good
        .iter()
        .copied()
        .filter(|&s| !good.iter().any(|&t| t != s && t & s == s))
        .collect();
    let mut blocks: Vec<Vec<(usize, usize)>> = maximal
        .into_iter()
        .map(|s| {
            let mut es = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if s >> u & 1 == 1 && s >> v & 1 == 1 && g.has_edge(u, v) {
                        es.push((u, v));
                    }
                }
            }
            es
        })
        .collect();
    blocks.sort();
    blocks
}

/// Number of connected labelled graphs on `n` vertices, by union-find over
/// every edge subset.
pub fn count_connected_labeled(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut count = 0;
    for mask in 0u64..(1 << pairs.len()) {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut parts = n;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    parts -= 1;
                }
            }
        }
        if parts <= 1 {
            count += 1;
        }
    }
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every vertex permutation.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let n = g.n();
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == h.has_edge(p[u], p[v]))))
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.set_edge(u, v, true);
            }
        }
    }
    g
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
