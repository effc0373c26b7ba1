//! Edge-grafting rewrites that strictly increase RDD.
//!
//! Each rewrite takes a [`GraftInstance`]: a graph plus role labels naming
//! the special vertices of the rewrite. [`validate_instance`] checks every
//! hypothesis of the rewrite against the graph and reports each failed
//! hypothesis by name; the rewrite functions refuse unvalidated instances.
//!
//! | id    | rewrite                                                        |
//! |-------|----------------------------------------------------------------|
//! | `l31` | move the common neighbours `w_i` of `v` over to `x_2`          |
//! | `c33` | move the last vertex of the longer pendant path to the shorter |
//! | `l34` | slide `K_q`'s edges at `v_1` onto `K_p`                        |
//! | `l41` | contract a cut edge, compensate with a pendant vertex          |
//! | `l42` | re-root two hanging subgraphs at one of two twin vertices      |
//!
//! Paths are listed including their anchor: a path of length `t` at `u`
//! is `[u, x_2, ..., x_t]`, so `t = 1` is the trivial path.
//!
//! All rewrites keep vertex indices. Identification in `l41` reuses the
//! absorbed vertex's index for the new pendant vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codec::{parse_edge_list, parse_graph6};
use crate::error::{GraftError, GraphError};
use crate::graph::{bits, Graph};
use crate::metrics::bfs_distances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaId {
    /// Edge monotonicity; checked directly, has no rewrite.
    L21,
    L31,
    C33,
    L34,
    L41,
    L42,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::L21,
        LemmaId::L31,
        LemmaId::C33,
        LemmaId::L34,
        LemmaId::L41,
        LemmaId::L42,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::L21 => "l21",
            LemmaId::L31 => "l31",
            LemmaId::C33 => "c33",
            LemmaId::L34 => "l34",
            LemmaId::L41 => "l41",
            LemmaId::L42 => "l42",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown lemma id {s:?} (expected one of l21, l31, c33, l34, l41, l42)")
            })
    }
}

/// Special vertices of each rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "lemma", rename_all = "lowercase")]
pub enum Roles {
    /// `uv` an edge of `G_1` with `N(u)\{v} = N(v)\{u} = {w_1..w_k}`;
    /// `x = [u, x_2, .., x_t]` a shortest path of `G_2`;
    /// `z = [v, z_2, .., z_s]` a pendant path; `t >= s + 2`.
    L31 {
        u: usize,
        v: usize,
        w: Vec<usize>,
        x: Vec<usize>,
        z: Vec<usize>,
    },
    /// Base graph with twin-like edge `uv` and a common neighbour, pendant
    /// paths `x = [u, ..]` of length `t` and `z = [v, ..]` of length `s`,
    /// `t >= s + 2 >= 3`.
    C33 {
        u: usize,
        v: usize,
        x: Vec<usize>,
        z: Vec<usize>,
    },
    /// Cliques `kp ∋ u, w1` and `kq ∋ u, v1` sharing only `u`; pendant
    /// paths `w_path = [w1, ..]` (length `t`) and `v_path = [v1, ..]`
    /// (length `s`), `t >= s >= 1`; other clique vertices except `u` may
    /// carry hanging connected subgraphs.
    L34 {
        u: usize,
        v1: usize,
        w1: usize,
        kp: Vec<usize>,
        kq: Vec<usize>,
        w_path: Vec<usize>,
        v_path: Vec<usize>,
    },
    /// `w1w2` a cut edge with both sides nontrivial.
    L41 { w1: usize, w2: usize },
    /// `H` built from `G_0 ∋ u, v` (with `N(u)\{v} = N(v)\{u}`) by hanging
    /// `G_1` at `u` and `G_2` at `v`. After identification `w_1 = u` and
    /// `w_2 = v`, so the hanging parts are recovered from the graph.
    L42 { u: usize, v: usize },
}

impl Roles {
    pub fn lemma(&self) -> LemmaId {
        match self {
            Roles::L31 { .. } => LemmaId::L31,
            Roles::C33 { .. } => LemmaId::C33,
            Roles::L34 { .. } => LemmaId::L34,
            Roles::L41 { .. } => LemmaId::L41,
            Roles::L42 { .. } => LemmaId::L42,
        }
    }

    /// Same roles with every vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Roles {
        let m = |v: &usize| perm[*v];
        let ms = |vs: &Vec<usize>| vs.iter().map(m).collect::<Vec<_>>();
        match self {
            Roles::L31 { u, v, w, x, z } => Roles::L31 {
                u: m(u),
                v: m(v),
                w: ms(w),
                x: ms(x),
                z: ms(z),
            },
            Roles::C33 { u, v, x, z } => Roles::C33 {
                u: m(u),
                v: m(v),
                x: ms(x),
                z: ms(z),
            },
            Roles::L34 {
                u,
                v1,
                w1,
                kp,
                kq,
                w_path,
                v_path,
            } => Roles::L34 {
                u: m(u),
                v1: m(v1),
                w1: m(w1),
                kp: ms(kp),
                kq: ms(kq),
                w_path: ms(w_path),
                v_path: ms(v_path),
            },
            Roles::L41 { w1, w2 } => Roles::L41 {
                w1: m(w1),
                w2: m(w2),
            },
            Roles::L42 { u, v } => Roles::L42 { u: m(u), v: m(v) },
        }
    }

    fn vertices(&self) -> Vec<usize> {
        match self {
            Roles::L31 { u, v, w, x, z } => [*u, *v]
                .into_iter()
                .chain(w.iter().chain(x).chain(z).copied())
                .collect(),
            Roles::C33 { u, v, x, z } => [*u, *v]
                .into_iter()
                .chain(x.iter().chain(z).copied())
                .collect(),
            Roles::L34 {
                u,
                v1,
                w1,
                kp,
                kq,
                w_path,
                v_path,
            } => [*u, *v1, *w1]
                .into_iter()
                .chain(kp.iter().chain(kq).chain(w_path).chain(v_path).copied())
                .collect(),
            Roles::L41 { w1, w2 } => vec![*w1, *w2],
            Roles::L42 { u, v } => vec![*u, *v],
        }
    }
}

/// A graph with role labels for one rewrite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraftInstance {
    graph: Graph,
    roles: Roles,
    validated: bool,
}

impl GraftInstance {
    pub fn new(graph: Graph, roles: Roles) -> GraftInstance {
        GraftInstance {
            graph,
            roles,
            validated: false,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn roles(&self) -> &Roles {
        &self.roles
    }

    pub fn lemma(&self) -> LemmaId {
        self.roles.lemma()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// The instance with vertex `v` renamed to `perm[v]`; needs validating
    /// again.
    pub fn relabeled(&self, perm: &[usize]) -> GraftInstance {
        GraftInstance::new(self.graph.permuted(perm), self.roles.relabeled(perm))
    }
}

/// JSON description of an instance: the graph as an edge list (`graph`)
/// or graph6 (`g6`), plus the role fields tagged by `lemma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g6: Option<String>,
    #[serde(flatten)]
    pub roles: Roles,
}

impl InstanceFile {
    pub fn from_instance(inst: &GraftInstance) -> InstanceFile {
        InstanceFile {
            graph: Some(crate::codec::write_edge_list(&inst.graph)),
            g6: None,
            roles: inst.roles.clone(),
        }
    }

    pub fn into_instance(self) -> Result<GraftInstance, GraftError> {
        let graph = match (self.graph, self.g6) {
            (Some(e), None) => parse_edge_list(&e)?.graph,
            (None, Some(s)) => parse_graph6(s.as_bytes())?,
            _ => {
                return Err(GraftError::Violations(vec![
                    "instance needs exactly one of \"graph\" (edge list) or \"g6\"".into(),
                ]))
            }
        };
        Ok(GraftInstance::new(graph, self.roles))
    }
}

fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

/// Collects named hypothesis failures.
struct Checker<'a> {
    g: &'a Graph,
    failed: Vec<String>,
}

impl<'a> Checker<'a> {
    fn require(&mut self, ok: bool, name: &str) -> bool {
        if !ok {
            self.failed.push(name.to_string());
        }
        ok
    }

    fn is_path(&self, seq: &[usize]) -> bool {
        seq.windows(2).all(|w| self.g.has_edge(w[0], w[1]))
    }

    /// Every vertex after the anchor touches only its path neighbours.
    fn is_pendant_tail(&self, seq: &[usize]) -> bool {
        (1..seq.len()).all(|i| {
            let mut allowed = 1u64 << seq[i - 1];
            if i + 1 < seq.len() {
                allowed |= 1 << seq[i + 1];
            }
            self.g.neighbors(seq[i]) == allowed
        })
    }

    fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.g.has_edge(a, b)))
    }

    fn distinct(vs: &[usize]) -> bool {
        mask_of(vs).count_ones() as usize == vs.len()
    }
}

/// Checks every hypothesis of the instance's rewrite.
pub fn validate_instance(inst: GraftInstance) -> Result<GraftInstance, GraftError> {
    let g = &inst.graph;
    let mut c = Checker {
        g,
        failed: Vec::new(),
    };

    if let Some(&bad) = inst.roles.vertices().iter().find(|&&v| v >= g.n()) {
        return Err(GraftError::Graph(GraphError::InvalidVertex {
            u: bad,
            n: g.n(),
        }));
    }
    c.require(g.is_connected(), "G is connected");

    match &inst.roles {
        Roles::L31 { u, v, w, x, z } => validate_l31(&mut c, *u, *v, w, x, z),
        Roles::C33 { u, v, x, z } => validate_c33(&mut c, *u, *v, x, z),
        Roles::L34 {
            u,
            v1,
            w1,
            kp,
            kq,
            w_path,
            v_path,
        } => validate_l34(&mut c, *u, *v1, *w1, kp, kq, w_path, v_path),
        Roles::L41 { w1, w2 } => validate_l41(&mut c, *w1, *w2),
        Roles::L42 { u, v } => {
            validate_l42(&mut c, *u, *v);
        }
    }

    if c.failed.is_empty() {
        Ok(GraftInstance {
            validated: true,
            ..inst
        })
    } else {
        Err(GraftError::Violations(c.failed))
    }
}

fn validate_l31(c: &mut Checker, u: usize, v: usize, w: &[usize], x: &[usize], z: &[usize]) {
    let g = c.g;
    let (t, s) = (x.len(), z.len());
    c.require(x.first() == Some(&u), "x_1 = u");
    c.require(z.first() == Some(&v), "z_1 = v");
    let all: Vec<usize> = [u, v]
        .iter()
        .chain(w)
        .chain(&x[1.min(t)..])
        .chain(&z[1.min(s)..])
        .copied()
        .collect();
    if !c.require(Checker::distinct(&all), "role vertices are distinct") || t == 0 || s == 0 {
        return;
    }
    c.require(g.has_edge(u, v), "uv is an edge of G_1");
    c.require(
        c.is_path(z) && c.is_pendant_tail(z),
        "z_1..z_s is a pendant path at v",
    );
    c.require(t >= s + 2, "t >= s+2");

    // Split V - {u, v} - path tail: parts touching v belong to G_1, parts
    // touching only u belong to G_2.
    let rest = g.vertex_mask() & !(1 << u | 1 << v) & !mask_of(&z[1..]);
    let mut g1 = 0u64;
    let mut g2 = 0u64;
    for comp in g.component_masks_within(rest) {
        let touches_v = bits(comp).any(|y| g.has_edge(y, v));
        if touches_v {
            g1 |= comp;
        } else {
            g2 |= comp;
        }
    }
    let nu = g.neighbors(u) & g1;
    let nv = g.neighbors(v) & g1;
    c.require(nu == nv, "N_{G_1}(u)\\{v} = N_{G_1}(v)\\{u}");
    c.require(nv != 0, "k >= 1");
    c.require(
        mask_of(w) == nv,
        "w_1..w_k is the common neighbourhood of u and v in G_1",
    );

    let x_tail = mask_of(&x[1..]);
    if !c.require(x_tail & !g2 == 0, "x_2..x_t lie in G_2") {
        return;
    }
    if !c.require(c.is_path(x), "x_1..x_t is a path") {
        return;
    }
    let g2_with_root = g2 | 1 << u;
    let rows: Vec<usize> = bits(g2_with_root).collect();
    let sub = g.induced(&rows).expect("subset of a valid graph");
    let idx = |a: usize| rows.iter().position(|&r| r == a).expect("in G_2");
    let dist = bfs_distances(&sub);
    c.require(
        dist.get(idx(x[0]), idx(x[t - 1])) == Some((t - 1) as u8),
        "x_1..x_t is a shortest path in G_2",
    );
}

fn validate_c33(c: &mut Checker, u: usize, v: usize, x: &[usize], z: &[usize]) {
    let g = c.g;
    let (t, s) = (x.len(), z.len());
    c.require(x.first() == Some(&u), "x_1 = u");
    c.require(z.first() == Some(&v), "z_1 = v");
    let all: Vec<usize> = [u, v]
        .iter()
        .chain(&x[1.min(t)..])
        .chain(&z[1.min(s)..])
        .copied()
        .collect();
    if !c.require(Checker::distinct(&all), "role vertices are distinct") || t == 0 || s == 0 {
        return;
    }
    c.require(
        c.is_path(x) && c.is_pendant_tail(x),
        "P_t is a pendant path at u",
    );
    c.require(
        c.is_path(z) && c.is_pendant_tail(z),
        "P_s is a pendant path at v",
    );
    c.require(t >= s + 2 && s + 2 >= 3, "t >= s+2 >= 3");
    c.require(g.has_edge(u, v), "uv is an edge");
    let base = g.vertex_mask() & !mask_of(&x[1..]) & !mask_of(&z[1..]);
    c.require(
        g.component_count_within(base) == 1,
        "base graph is connected",
    );
    let nu = g.neighbors(u) & base & !(1 << v);
    let nv = g.neighbors(v) & base & !(1 << u);
    c.require(nu == nv, "N(u)\\{v} = N(v)\\{u}");
    c.require(nu != 0, "N(u)\\{v} is nonempty");
}

#[allow(clippy::too_many_arguments)]
fn validate_l34(
    c: &mut Checker,
    u: usize,
    v1: usize,
    w1: usize,
    kp: &[usize],
    kq: &[usize],
    w_path: &[usize],
    v_path: &[usize],
) {
    let g = c.g;
    let (p, q, t, s) = (kp.len(), kq.len(), w_path.len(), v_path.len());
    let (mp, mq) = (mask_of(kp), mask_of(kq));
    let ok = c.require(
        Checker::distinct(kp) && Checker::distinct(kq),
        "clique vertex lists are distinct",
    ) & c.require(mp & mq == 1 << u, "K_p and K_q share exactly u")
        & c.require(w1 != u && mp >> w1 & 1 == 1, "w_1 in V(K_p)\\{u}")
        & c.require(v1 != u && mq >> v1 & 1 == 1, "v_1 in V(K_q)\\{u}")
        & c.require(w_path.first() == Some(&w1), "path P_t starts at w_1")
        & c.require(v_path.first() == Some(&v1), "path P_s starts at v_1");
    c.require(p >= 3 && q >= 3, "p >= 3 and q >= 3");
    c.require(t >= s && s >= 1, "t >= s >= 1");
    if !ok {
        return;
    }
    let tails = [&w_path[1..], &v_path[1..]].concat();
    let cliques = mp | mq;
    if !c.require(
        mask_of(&tails) & cliques == 0 && Checker::distinct(&tails),
        "path vertices are distinct and off the cliques",
    ) {
        return;
    }
    c.require(c.is_clique(kp), "K_p is complete");
    c.require(c.is_clique(kq), "K_q is complete");
    let cross = kp
        .iter()
        .filter(|&&a| a != u)
        .any(|&a| g.neighbors(a) & mq & !(1 << u) != 0);
    c.require(!cross, "no edges between K_p-u and K_q-u");
    c.require(
        c.is_path(w_path) && c.is_pendant_tail(w_path),
        "P_t is a pendant path at w_1",
    );
    c.require(
        c.is_path(v_path) && c.is_pendant_tail(v_path),
        "P_s is a pendant path at v_1",
    );
    c.require(
        g.neighbors(u) == cliques & !(1 << u),
        "nothing is attached at u",
    );
    let with_path = |anchor: usize, clique: u64, path: &[usize]| {
        let mut m = clique & !(1 << anchor);
        if path.len() > 1 {
            m |= 1 << path[1];
        }
        g.neighbors(anchor) == m
    };
    c.require(with_path(w1, mp, w_path), "only P_t is attached at w_1");
    c.require(with_path(v1, mq, v_path), "only P_s is attached at v_1");

    let rest = g.vertex_mask() & !cliques & !mask_of(&tails);
    let single_root = g.component_masks_within(rest).into_iter().all(|comp| {
        let roots = bits(comp).fold(0u64, |m, y| m | g.neighbors(y)) & cliques;
        roots.count_ones() == 1 && roots & (1 << u | 1 << v1 | 1 << w1) == 0
    });
    c.require(
        single_root,
        "other attachments hang at a single vertex of V(K_p ∪ K_q)\\{u, v_1, w_1}",
    );
}

fn validate_l41(c: &mut Checker, w1: usize, w2: usize) {
    let g = c.g;
    if !c.require(w1 != w2 && g.has_edge(w1, w2), "w_1w_2 is an edge") {
        return;
    }
    let mut cut = g.clone();
    cut.set_edge(w1, w2, false);
    let side1 = cut.reach(w1, cut.vertex_mask());
    if !c.require(side1 >> w2 & 1 == 0, "w_1w_2 is a cut edge") {
        return;
    }
    let side2 = cut.reach(w2, cut.vertex_mask());
    c.require(side1.count_ones() >= 2, "G_1 is nontrivial");
    c.require(side2.count_ones() >= 2, "G_2 is nontrivial");
}

/// Hanging parts `(G_1 - w_1, G_2 - w_2)` as bitsets.
fn l42_parts(g: &Graph, u: usize, v: usize) -> (u64, u64) {
    let all = g.vertex_mask();
    let g1 = all & !g.reach(v, all & !(1 << u)) & !(1 << u);
    let g2 = all & !g.reach(u, all & !(1 << v)) & !(1 << v);
    (g1, g2)
}

fn validate_l42(c: &mut Checker, u: usize, v: usize) -> Option<(u64, u64)> {
    let g = c.g;
    if !c.require(u != v, "u != v") {
        return None;
    }
    let (g1, g2) = l42_parts(g, u, v);
    c.require(g1 != 0, "G_1 is nontrivial");
    c.require(g2 != 0, "G_2 is nontrivial");
    let g0 = g.vertex_mask() & !g1 & !g2;
    c.require(
        g1 & g2 == 0 && g.component_count_within(g0) == 1,
        "G_0 is connected",
    );
    let nu = g.neighbors(u) & g0 & !(1 << v);
    let nv = g.neighbors(v) & g0 & !(1 << u);
    c.require(nu == nv, "N_{G_0}(u)\\{v} = N_{G_0}(v)\\{u}");
    Some((g1, g2))
}

fn require_validated(inst: &GraftInstance, expected: LemmaId) -> Result<(), GraftError> {
    if inst.lemma() != expected {
        return Err(GraftError::WrongLemma {
            expected: expected.as_str(),
            found: inst.lemma().as_str(),
        });
    }
    if !inst.validated {
        return Err(GraftError::Unvalidated);
    }
    Ok(())
}

/// `H = G - {z_1 w_i} + {x_2 w_i}`.
pub fn graft_l31(inst: &GraftInstance) -> Result<Graph, GraftError> {
    require_validated(inst, LemmaId::L31)?;
    let Roles::L31 { w, x, z, .. } = &inst.roles else {
        unreachable!()
    };
    let mut h = inst.graph.clone();
    for &wi in w {
        h.set_edge(z[0], wi, false);
        h.set_edge(x[1], wi, true);
    }
    Ok(h)
}

/// Moves the last vertex of the `t`-path to the end of the `s`-path,
/// turning `G(t,s)` into `G(t-1,s+1)`. The returned instance describes the
/// new graph and is not validated.
pub fn shift_pendant_paths_c33(inst: &GraftInstance) -> Result<GraftInstance, GraftError> {
    require_validated(inst, LemmaId::C33)?;
    let Roles::C33 { u, v, x, z } = &inst.roles else {
        unreachable!()
    };
    let mut h = inst.graph.clone();
    let t = x.len();
    let moved = x[t - 1];
    h.set_edge(x[t - 2], moved, false);
    h.set_edge(*z.last().expect("nonempty"), moved, true);
    let mut z = z.clone();
    z.push(moved);
    Ok(GraftInstance::new(
        h,
        Roles::C33 {
            u: *u,
            v: *v,
            x: x[..t - 1].to_vec(),
            z,
        },
    ))
}

/// Builds the `c33` instance obtained by hanging a path of length `t` at
/// `u` and one of length `s` at `v` (lengths count the anchor).
pub fn attach_c33_paths(
    base: &Graph,
    u: usize,
    v: usize,
    t: usize,
    s: usize,
) -> Result<GraftInstance, GraftError> {
    let mut g = base.clone();
    let grow = |anchor: usize, len: usize, g: &mut Graph| -> Result<Vec<usize>, GraphError> {
        let mut path = vec![anchor];
        for _ in 1..len {
            let nv = g.push_vertex()?;
            g.set_edge(*path.last().expect("nonempty"), nv, true);
            path.push(nv);
        }
        Ok(path)
    };
    base.check_vertex(u)?;
    base.check_vertex(v)?;
    let x = grow(u, t.max(1), &mut g)?;
    let z = grow(v, s.max(1), &mut g)?;
    Ok(GraftInstance::new(g, Roles::C33 { u, v, x, z }))
}

/// Deletes the `K_q` edges at `v_1` except `v_1u`, then joins every vertex
/// of `K_q - v_1` to every vertex of `K_p`.
pub fn graft_l34(inst: &GraftInstance) -> Result<Graph, GraftError> {
    require_validated(inst, LemmaId::L34)?;
    let Roles::L34 { u, v1, kp, kq, .. } = &inst.roles else {
        unreachable!()
    };
    let mut h = inst.graph.clone();
    for &y in kq.iter().filter(|&&y| y != *v1 && y != *u) {
        h.set_edge(*v1, y, false);
    }
    for &y in kq.iter().filter(|&&y| y != *v1) {
        for &x in kp.iter().filter(|&&x| x != y) {
            h.set_edge(x, y, true);
        }
    }
    Ok(h)
}

/// Identifies `w_2` into `w_1` and re-uses the index of `w_2` as a new
/// pendant vertex at the merged vertex.
pub fn contract_cut_edge_l41(inst: &GraftInstance) -> Result<Graph, GraftError> {
    require_validated(inst, LemmaId::L41)?;
    let Roles::L41 { w1, w2 } = inst.roles else {
        unreachable!()
    };
    let mut h = inst.graph.clone();
    for y in bits(h.neighbors(w2) & !(1 << w1)) {
        h.set_edge(w2, y, false);
        h.set_edge(w1, y, true);
    }
    Ok(h)
}

/// `(H_1, H_2)`: both hanging parts re-rooted at `u`, respectively at `v`.
pub fn merge_blocks_l42(inst: &GraftInstance) -> Result<(Graph, Graph), GraftError> {
    require_validated(inst, LemmaId::L42)?;
    let Roles::L42 { u, v } = inst.roles else {
        unreachable!()
    };
    let g = &inst.graph;
    let (g1, g2) = l42_parts(g, u, v);
    let reroot = |from: usize, to: usize, part: u64| {
        let mut h = g.clone();
        for y in bits(g.neighbors(from) & part) {
            h.set_edge(from, y, false);
            h.set_edge(to, y, true);
        }
        h
    };
    Ok((reroot(v, u, g2), reroot(u, v, g1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle_graph, path_graph};
    use crate::metrics::rdd;
    use crate::structure::{count_cut_edges, count_cut_vertices};

    fn violations(inst: GraftInstance) -> Vec<String> {
        match validate_instance(inst) {
            Err(GraftError::Violations(v)) => v,
            other => panic!("expected violations, got {other:?}"),
        }
    }

    /// K_4 on (u=0, v=1, w=2,3), path x at u of length t, path z at v of
    /// length s.
    fn l31_k4(t: usize, s: usize) -> GraftInstance {
        let k4 = complete_graph(4).unwrap();
        let (g, xmap) = k4.attach(&path_graph(t).unwrap(), 0, 0).unwrap();
        let (g, zmap) = g.attach(&path_graph(s).unwrap(), 0, 1).unwrap();
        GraftInstance::new(
            g,
            Roles::L31 {
                u: 0,
                v: 1,
                w: vec![2, 3],
                x: xmap,
                z: zmap,
            },
        )
    }

    #[test]
    fn l31_validates_and_increases() {
        let inst = validate_instance(l31_k4(5, 2)).unwrap();
        let h = graft_l31(&inst).unwrap();
        let g = inst.graph();
        assert_eq!(h.n(), g.n());
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(count_cut_vertices(&h), count_cut_vertices(g));
        assert!(rdd(&h).unwrap() > rdd(g).unwrap());
    }

    #[test]
    fn l31_boundary() {
        let v = violations(l31_k4(3, 2));
        assert_eq!(v, vec!["t >= s+2"]);
    }

    #[test]
    fn l31_triangle_example() {
        // triangle u=0, v=1, w1=2; P_4 geodesic at u; trivial path at v
        let (g, x) = complete_graph(3)
            .unwrap()
            .attach(&path_graph(4).unwrap(), 0, 0)
            .unwrap();
        let inst = GraftInstance::new(
            g.clone(),
            Roles::L31 {
                u: 0,
                v: 1,
                w: vec![2],
                x: x.clone(),
                z: vec![1],
            },
        );
        let inst = validate_instance(inst).unwrap();
        let h = graft_l31(&inst).unwrap();
        assert!(!h.has_edge(1, 2));
        assert!(h.has_edge(x[1], 2));
        assert!(rdd(&h).unwrap() > rdd(&g).unwrap());
        // with s = 1 the edge uv becomes a pendant edge
        assert_eq!(h.deg(1), 1);
    }

    #[test]
    fn l31_rejects_shortcut_in_g2() {
        // x path 0-4-5-6 with a chord 0-6 is not geodesic
        let mut inst = l31_k4(4, 1);
        let Roles::L31 { x, .. } = inst.roles.clone() else {
            unreachable!()
        };
        inst.graph.set_edge(x[0], x[3], true);
        let v = violations(inst);
        assert!(
            v.contains(&"x_1..x_t is a shortest path in G_2".to_string()),
            "{v:?}"
        );
    }

    #[test]
    fn l31_rejects_wrong_w() {
        let mut inst = l31_k4(4, 1);
        if let Roles::L31 { w, .. } = &mut inst.roles {
            w.pop();
        }
        let v = violations(inst);
        assert_eq!(
            v,
            vec!["w_1..w_k is the common neighbourhood of u and v in G_1"]
        );
    }

    #[test]
    fn unvalidated_instances_are_refused() {
        assert_eq!(graft_l31(&l31_k4(5, 1)), Err(GraftError::Unvalidated));
        let inst = validate_instance(l31_k4(5, 1)).unwrap();
        assert!(matches!(
            graft_l34(&inst),
            Err(GraftError::WrongLemma { .. })
        ));
    }

    #[test]
    fn c33_shift_chain() {
        let base = complete_graph(3).unwrap();
        let inst = validate_instance(attach_c33_paths(&base, 0, 1, 3, 1).unwrap()).unwrap();
        let next = shift_pendant_paths_c33(&inst).unwrap();
        let Roles::C33 { x, z, .. } = next.roles() else {
            unreachable!()
        };
        assert_eq!((x.len(), z.len()), (2, 2));
        assert!(rdd(next.graph()).unwrap() > rdd(inst.graph()).unwrap());
        assert_eq!(next.graph().n(), inst.graph().n());
        assert_eq!(
            count_cut_vertices(next.graph()),
            count_cut_vertices(inst.graph())
        );

        let inst = validate_instance(attach_c33_paths(&base, 0, 1, 4, 1).unwrap()).unwrap();
        let next = shift_pendant_paths_c33(&inst).unwrap();
        let Roles::C33 { x, z, .. } = next.roles() else {
            unreachable!()
        };
        assert_eq!((x.len(), z.len()), (3, 2));
        assert_eq!(violations(next), vec!["t >= s+2 >= 3"]);
    }

    #[test]
    fn c33_needs_common_neighbour() {
        let base = complete_graph(2).unwrap();
        let v = violations(attach_c33_paths(&base, 0, 1, 3, 1).unwrap());
        assert_eq!(v, vec!["N(u)\\{v} is nonempty"]);
    }

    /// Two triangles sharing u = 0: K_p = {0,1,2}, K_q = {0,3,4}; w_1 = 1,
    /// v_1 = 3, with paths of the given lengths.
    fn l34_bowtie(t: usize, s: usize) -> GraftInstance {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let (g, w_path) = g.attach(&path_graph(t).unwrap(), 0, 1).unwrap();
        let (g, v_path) = g.attach(&path_graph(s).unwrap(), 0, 3).unwrap();
        GraftInstance::new(
            g,
            Roles::L34 {
                u: 0,
                v1: 3,
                w1: 1,
                kp: vec![0, 1, 2],
                kq: vec![0, 3, 4],
                w_path,
                v_path,
            },
        )
    }

    #[test]
    fn l34_degree_bookkeeping() {
        let inst = validate_instance(l34_bowtie(2, 2)).unwrap();
        let g = inst.graph().clone();
        let h = graft_l34(&inst).unwrap();
        let (p, q) = (3, 3);
        assert_eq!(g.deg(3), q);
        assert_eq!(h.deg(3), 2);
        assert_eq!(g.deg(1), p);
        assert_eq!(h.deg(1), p + q - 2);
        assert_eq!(count_cut_vertices(&h), count_cut_vertices(&g));
        assert!(rdd(&h).unwrap() > rdd(&g).unwrap());
    }

    #[test]
    fn l34_trivial_paths() {
        let inst = validate_instance(l34_bowtie(1, 1)).unwrap();
        let h = graft_l34(&inst).unwrap();
        // v_1 keeps only its edge to u
        assert_eq!(h.neighbors(3), 1 << 0);
        assert_eq!(count_cut_vertices(&h), count_cut_vertices(inst.graph()));
        assert!(rdd(&h).unwrap() > rdd(inst.graph()).unwrap());
    }

    #[test]
    fn l34_violations() {
        assert_eq!(violations(l34_bowtie(1, 2)), vec!["t >= s >= 1"]);
        let mut inst = l34_bowtie(2, 1);
        inst.graph.set_edge(2, 4, true);
        assert!(violations(inst).contains(&"no edges between K_p-u and K_q-u".to_string()));
        let mut inst = l34_bowtie(2, 1);
        let x = inst.graph.push_vertex().unwrap();
        inst.graph.set_edge(0, x, true);
        assert!(violations(inst).contains(&"nothing is attached at u".to_string()));
    }

    #[test]
    fn l34_with_attachment() {
        let inst = l34_bowtie(2, 1);
        let (g, _) = inst
            .graph()
            .attach(&complete_graph(3).unwrap(), 0, 4)
            .unwrap();
        let inst = validate_instance(GraftInstance::new(g, inst.roles().clone())).unwrap();
        let h = graft_l34(&inst).unwrap();
        assert!(rdd(&h).unwrap() > rdd(inst.graph()).unwrap());
    }

    fn two_triangles_bridge() -> GraftInstance {
        let t = complete_graph(3).unwrap();
        let mut g = t.disjoint_union(&t).unwrap();
        g.set_edge(0, 3, true);
        GraftInstance::new(g, Roles::L41 { w1: 0, w2: 3 })
    }

    #[test]
    fn l41_example() {
        let inst = validate_instance(two_triangles_bridge()).unwrap();
        let g = inst.graph().clone();
        let h = contract_cut_edge_l41(&inst).unwrap();
        assert_eq!(h.n(), 6);
        assert_eq!(h.degrees(), vec![5, 2, 2, 1, 2, 2]);
        assert_eq!(count_cut_edges(&h), count_cut_edges(&g));
        assert!(rdd(&h).unwrap() > rdd(&g).unwrap());
    }

    #[test]
    fn l41_violations() {
        let c = cycle_graph(5).unwrap();
        assert_eq!(
            violations(GraftInstance::new(c, Roles::L41 { w1: 0, w2: 1 })),
            vec!["w_1w_2 is a cut edge"]
        );
        let paw = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert_eq!(
            violations(GraftInstance::new(paw, Roles::L41 { w1: 0, w2: 3 })),
            vec!["G_2 is nontrivial"]
        );
    }

    fn l42_c4() -> GraftInstance {
        // C_4 = 0-1-2-3-0 with u = 0, v = 2 opposite; K_3 at u, P_2 at v
        let c4 = cycle_graph(4).unwrap();
        let (g, _) = c4.attach(&complete_graph(3).unwrap(), 0, 0).unwrap();
        let (g, _) = g.attach(&path_graph(2).unwrap(), 0, 2).unwrap();
        GraftInstance::new(g, Roles::L42 { u: 0, v: 2 })
    }

    #[test]
    fn l42_example() {
        let inst = validate_instance(l42_c4()).unwrap();
        let g = inst.graph();
        let (h1, h2) = merge_blocks_l42(&inst).unwrap();
        assert_eq!(h1.n(), g.n());
        assert_eq!(h2.n(), g.n());
        let r = rdd(g).unwrap();
        assert!(rdd(&h1).unwrap() > r);
        assert!(rdd(&h2).unwrap() > r);
    }

    #[test]
    fn l42_two_single_edges() {
        let k3 = complete_graph(3).unwrap();
        let (g, _) = k3.attach(&path_graph(2).unwrap(), 0, 0).unwrap();
        let (g, _) = g.attach(&path_graph(2).unwrap(), 0, 1).unwrap();
        let inst = validate_instance(GraftInstance::new(g, Roles::L42 { u: 0, v: 1 })).unwrap();
        let (h1, _) = merge_blocks_l42(&inst).unwrap();
        assert_eq!(h1.deg(3), 1);
        assert_eq!(h1.deg(4), 1);
        assert!(h1.has_edge(0, 3) && h1.has_edge(0, 4));
    }

    #[test]
    fn l42_violations() {
        let k3 = complete_graph(3).unwrap();
        let (g, _) = k3.attach(&path_graph(2).unwrap(), 0, 0).unwrap();
        assert_eq!(
            violations(GraftInstance::new(g, Roles::L42 { u: 0, v: 1 })),
            vec!["G_2 is nontrivial"]
        );
        // 1 is adjacent to u but not to v
        let g = Graph::from_edges(6, [(0, 1), (0, 3), (3, 2), (0, 4), (2, 5), (1, 3)]).unwrap();
        assert_eq!(
            violations(GraftInstance::new(g, Roles::L42 { u: 0, v: 2 })),
            vec!["N_{G_0}(u)\\{v} = N_{G_0}(v)\\{u}"]
        );
    }

    #[test]
    fn instance_file_round_trip() {
        let inst = l31_k4(5, 2);
        let file = InstanceFile::from_instance(&inst);
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"lemma\":\"l31\""));
        let back: InstanceFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_instance().unwrap(), inst);

        let json =
            r#"{"lemma":"l41","graph":"6; 0-1, 0-2, 1-2, 3-4, 3-5, 4-5, 0-3","w1":0,"w2":3}"#;
        let inst: InstanceFile = serde_json::from_str(json).unwrap();
        assert!(validate_instance(inst.into_instance().unwrap()).is_ok());
    }

    #[test]
    fn out_of_range_roles() {
        let g = path_graph(3).unwrap();
        assert!(matches!(
            validate_instance(GraftInstance::new(g, Roles::L41 { w1: 0, w2: 7 })),
            Err(GraftError::Graph(GraphError::InvalidVertex { .. }))
        ));
    }
}
