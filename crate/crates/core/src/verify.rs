//! Exhaustive certification of the extremal results and randomised
//! certification of the grafting rewrites.
//!
//! Built-in enumeration walks all `2^C(n,2)` labelled graphs in edge-mask
//! order (bit `i` of the mask is the `i`-th vertex pair in graph6 order)
//! and keeps the connected ones. One scan of order `n` classifies every
//! graph by both its cut-vertex count and its cut-edge count, so both
//! families are certified from the same pass.
//!
//! Work is split into disjoint mask intervals. Each interval produces one
//! [`Bucket`] per `(family, k)`; buckets merge by an associative and
//! commutative rule (larger maximum wins, equal maxima add counts and keep
//! the lowest-keyed retained maximisers), so the result does not depend on
//! scheduling or on the number of workers.

use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codec::{parse_graph6, write_edge_list, write_graph6};
use crate::error::VerifyError;
use crate::families::{closed_form_gbar, complete_graph, path_graph, Family};
use crate::graft::{
    attach_c33_paths, contract_cut_edge_l41, graft_l31, graft_l34, merge_blocks_l42,
    shift_pendant_paths_c33, validate_instance, GraftInstance, LemmaId, Roles,
};
use crate::graph::{Edge, Graph};
use crate::iso::is_isomorphic;
use crate::metrics::{bfs_distances, rdd, rdd_via_transmission, rdd_with};
use crate::rational::Rational;
use crate::structure::cut_counts;

/// Default cap on the labelled maximisers kept per certificate.
pub const DEFAULT_RETAINED_MAXIMIZERS: usize = 64;

/// Largest order the built-in enumeration accepts without `allow_big`.
pub const MAX_ENUM_N: usize = 7;

/// Largest order the built-in enumeration accepts at all.
pub const MAX_ENUM_N_BIG: usize = 8;

const MAX_CHUNKS: u64 = 4096;

/// Vertex pairs in graph6 bit order: `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// The labelled graph whose edge set is `mask` over [`pair_order`].
pub fn labeled_graph(pairs: &[(usize, usize)], n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n).expect("enumeration orders are small");
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        let (a, b) = pairs[i];
        g.set_edge(a, b, true);
        m &= m - 1;
    }
    g
}

fn check_order(n: usize, allow_big: bool) -> Result<(), VerifyError> {
    match n {
        1..=MAX_ENUM_N => Ok(()),
        MAX_ENUM_N_BIG if allow_big => Ok(()),
        MAX_ENUM_N_BIG => Err(VerifyError::Range {
            n,
            range: "1..=7 (n = 8 needs the big flag)",
        }),
        _ => Err(VerifyError::Range { n, range: "1..=8" }),
    }
}

/// Connected labelled graphs of order `n` in edge-mask order.
pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let g = labeled_graph(&self.pairs, self.n, self.next);
            self.next += 1;
            if g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}

/// All connected labelled graphs on `n` vertices, `1 <= n <= 7`, or `n = 8`
/// with `allow_big`.
pub fn enumerate_connected(n: usize, allow_big: bool) -> Result<ConnectedGraphs, VerifyError> {
    check_order(n, allow_big)?;
    let pairs = pair_order(n);
    Ok(ConnectedGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
    })
}

/// Newline-delimited graph6, one graph per non-blank line. Errors carry the
/// 1-based line number.
pub struct Graph6Lines<R> {
    reader: R,
    path: PathBuf,
    line: usize,
    buf: String,
}

impl<R: BufRead> Graph6Lines<R> {
    pub fn new(reader: R, path: impl Into<PathBuf>) -> Self {
        Graph6Lines {
            reader,
            path: path.into(),
            line: 0,
            buf: String::new(),
        }
    }
}

impl<R: BufRead> Iterator for Graph6Lines<R> {
    type Item = Result<Graph, VerifyError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            self.line += 1;
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(source) => {
                    return Some(Err(VerifyError::Io {
                        path: self.path.clone(),
                        source,
                    }))
                }
            }
            let text = self.buf.trim_end_matches(['\n', '\r']);
            if text.trim().is_empty() {
                continue;
            }
            return Some(
                parse_graph6(text.as_bytes()).map_err(|source| VerifyError::Line {
                    path: self.path.clone(),
                    line: self.line,
                    source,
                }),
            );
        }
    }
}

pub fn enumerate_from_file(
    path: impl AsRef<Path>,
) -> Result<Graph6Lines<BufReader<File>>, VerifyError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| VerifyError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Graph6Lines::new(BufReader::new(file), path))
}

/// Where a scan takes its graphs from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    /// Built-in labelled enumeration.
    Labeled,
    /// Graphs supplied by the caller (typically read from a graph6 file).
    /// Graphs of other orders and disconnected graphs are skipped.
    Graphs(&'a [Graph]),
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads; `None` uses every core.
    pub jobs: Option<usize>,
    /// Labelled maximisers kept per certificate.
    pub retain: usize,
    /// Also evaluate every graph through [`rdd_via_transmission`] and count
    /// disagreements.
    pub cross_check: bool,
    /// Permit built-in enumeration at `n = 8`.
    pub allow_big: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: None,
            retain: DEFAULT_RETAINED_MAXIMIZERS,
            cross_check: false,
            allow_big: false,
        }
    }
}

/// Running maximum over one `(family, k)` class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bucket {
    pub max: Option<Rational>,
    /// Labelled graphs attaining `max`.
    pub count: u64,
    /// Whether every graph counted in `count` is isomorphic to the expected
    /// maximiser (vacuous without one).
    pub all_iso: bool,
    /// Lowest-keyed maximisers, sorted by key.
    pub retained: Vec<(u64, Graph)>,
    pub family_size: u64,
    pub transmission_mismatches: u64,
}

impl Bucket {
    fn new() -> Bucket {
        Bucket {
            max: None,
            count: 0,
            all_iso: true,
            retained: Vec::new(),
            family_size: 0,
            transmission_mismatches: 0,
        }
    }

    /// Keys must arrive in increasing order within one bucket.
    fn insert(&mut self, key: u64, g: &Graph, value: Rational, theory: Option<&Graph>, cap: usize) {
        self.family_size += 1;
        let ord = match self.max {
            None => Ordering::Greater,
            Some(m) => value.cmp(&m),
        };
        match ord {
            Ordering::Less => {}
            Ordering::Greater => {
                self.max = Some(value);
                self.count = 1;
                self.all_iso = theory.is_none_or(|t| is_isomorphic(g, t));
                self.retained.clear();
                if cap > 0 {
                    self.retained.push((key, g.clone()));
                }
            }
            Ordering::Equal => {
                self.count += 1;
                if self.all_iso {
                    self.all_iso = theory.is_none_or(|t| is_isomorphic(g, t));
                }
                if self.retained.len() < cap {
                    self.retained.push((key, g.clone()));
                }
            }
        }
    }

    fn merge(mut self, other: Bucket, cap: usize) -> Bucket {
        let family_size = self.family_size + other.family_size;
        let mismatches = self.transmission_mismatches + other.transmission_mismatches;
        let mut out = match (self.max, other.max) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) => match a.cmp(&b) {
                Ordering::Greater => self,
                Ordering::Less => other,
                Ordering::Equal => {
                    self.count += other.count;
                    self.all_iso &= other.all_iso;
                    self.retained.extend(other.retained);
                    self.retained.sort_by_key(|(k, _)| *k);
                    self.retained.truncate(cap);
                    self
                }
            },
        };
        out.family_size = family_size;
        out.transmission_mismatches = mismatches;
        out
    }
}

/// Per-order scan result: one bucket per `k` for each family.
#[derive(Clone, Debug)]
pub struct OrderScan {
    pub n: usize,
    pub graphs_scanned: u64,
    /// Indexed by the number of cut vertices.
    pub cut_vertex: Vec<Bucket>,
    /// Indexed by the number of cut edges.
    pub cut_edge: Vec<Bucket>,
    pub elapsed_secs: f64,
}

impl OrderScan {
    pub fn bucket(&self, family: Family, k: usize) -> Option<&Bucket> {
        match family {
            Family::CutVertex => self.cut_vertex.get(k),
            Family::CutEdge => self.cut_edge.get(k),
        }
    }
}

struct Partial {
    scanned: u64,
    cut_vertex: Vec<Bucket>,
    cut_edge: Vec<Bucket>,
}

impl Partial {
    fn new(n: usize) -> Partial {
        Partial {
            scanned: 0,
            cut_vertex: vec![Bucket::new(); n.max(1)],
            cut_edge: vec![Bucket::new(); n.max(1)],
        }
    }

    fn merge(self, other: Partial, cap: usize) -> Partial {
        let zip = |a: Vec<Bucket>, b: Vec<Bucket>| {
            a.into_iter().zip(b).map(|(x, y)| x.merge(y, cap)).collect()
        };
        Partial {
            scanned: self.scanned + other.scanned,
            cut_vertex: zip(self.cut_vertex, other.cut_vertex),
            cut_edge: zip(self.cut_edge, other.cut_edge),
        }
    }
}

/// Expected maximisers per `k` for one order.
struct Theory {
    cut_vertex: Vec<Option<Graph>>,
    cut_edge: Vec<Option<Graph>>,
}

impl Theory {
    fn new(n: usize) -> Theory {
        let build = |f: Family| {
            (0..n.max(1))
                .map(|k| {
                    f.in_range(n, k)
                        .then(|| f.extremal_graph(n, k).expect("in range"))
                })
                .collect()
        };
        Theory {
            cut_vertex: build(Family::CutVertex),
            cut_edge: build(Family::CutEdge),
        }
    }
}

struct Visitor<'a> {
    theory: &'a Theory,
    opts: &'a ScanOptions,
    acc: Partial,
}

impl Visitor<'_> {
    fn visit(&mut self, key: u64, g: &Graph) -> Result<(), VerifyError> {
        self.acc.scanned += 1;
        let (cv, ce) = cut_counts(g);
        let value = rdd_with(g, &bfs_distances(g))?;
        let mismatch = self.opts.cross_check && rdd_via_transmission(g)? != value;
        let cap = self.opts.retain;
        let b = &mut self.acc.cut_vertex[cv];
        b.insert(key, g, value, self.theory.cut_vertex[cv].as_ref(), cap);
        b.transmission_mismatches += u64::from(mismatch);
        let b = &mut self.acc.cut_edge[ce];
        b.insert(key, g, value, self.theory.cut_edge[ce].as_ref(), cap);
        b.transmission_mismatches += u64::from(mismatch);
        Ok(())
    }
}

fn with_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, VerifyError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    Ok(builder.build()?.install(f))
}

/// Scans every connected graph of order `n` from `source`, classifying by
/// cut-vertex and cut-edge count. Runs on the current rayon pool.
fn scan_order_in_pool(
    n: usize,
    source: Source<'_>,
    opts: &ScanOptions,
) -> Result<OrderScan, VerifyError> {
    let start = Instant::now();
    let theory = Theory::new(n);
    let cap = opts.retain;
    let fresh = || Visitor {
        theory: &theory,
        opts,
        acc: Partial::new(n),
    };
    let merge =
        |a: Result<Partial, VerifyError>, b: Result<Partial, VerifyError>| Ok(a?.merge(b?, cap));

    let acc = match source {
        Source::Labeled => {
            check_order(n, opts.allow_big)?;
            let pairs = pair_order(n);
            let total = 1u64 << pairs.len();
            let chunks = total.min(MAX_CHUNKS);
            let width = total / chunks;
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut v = fresh();
                    for mask in c * width..(c + 1) * width {
                        let g = labeled_graph(&pairs, n, mask);
                        if g.is_connected() {
                            v.visit(mask, &g)?;
                        }
                    }
                    Ok(v.acc)
                })
                .reduce(|| Ok(Partial::new(n)), merge)?
        }
        Source::Graphs(graphs) => {
            let keyed: Vec<(u64, &Graph)> = graphs
                .iter()
                .enumerate()
                .filter(|(_, g)| g.n() == n && g.is_connected())
                .map(|(i, g)| (i as u64, g))
                .collect();
            let width = keyed.len().div_ceil(MAX_CHUNKS as usize).max(1);
            keyed
                .par_chunks(width)
                .map(|chunk| {
                    let mut v = fresh();
                    for &(key, g) in chunk {
                        v.visit(key, g)?;
                    }
                    Ok(v.acc)
                })
                .reduce(|| Ok(Partial::new(n)), merge)?
        }
    };
    Ok(OrderScan {
        n,
        graphs_scanned: acc.scanned,
        cut_vertex: acc.cut_vertex,
        cut_edge: acc.cut_edge,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

pub fn scan_order(
    n: usize,
    source: Source<'_>,
    opts: &ScanOptions,
) -> Result<OrderScan, VerifyError> {
    with_pool(opts.jobs, || scan_order_in_pool(n, source, opts))?
}

/// Result of an exhaustive maximiser search over one `(n, k, family)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalCertificate {
    pub n: usize,
    pub k: usize,
    pub family: Family,
    /// Whether `(n, k)` lies in the range where an extremal graph is
    /// claimed.
    pub theory_applicable: bool,
    /// `None` when no connected graph of order `n` has this `k`.
    pub max_rdd: Option<Rational>,
    pub maximizer_count_labeled: u64,
    pub family_size: u64,
    /// Lowest-keyed labelled maximisers, at most the retention cap.
    pub maximizers_graph6: Vec<String>,
    pub theory_graph: Option<String>,
    pub theory_rdd: Option<Rational>,
    /// Closed-form value, for the cut-edge family only.
    pub closed_form: Option<Rational>,
    pub all_maximizers_isomorphic_to_theory: Option<bool>,
    /// `None` outside the applicable range; otherwise whether the maximum
    /// equals the expected value (and the closed form, where there is one)
    /// and every maximiser is isomorphic to the expected graph.
    pub matches_theory: Option<bool>,
    pub transmission_checked: bool,
    pub transmission_mismatches: u64,
    pub graphs_scanned: u64,
    pub elapsed_secs: f64,
}

impl ExtremalCertificate {
    /// Copy with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> ExtremalCertificate {
        ExtremalCertificate {
            elapsed_secs: 0.0,
            ..self.clone()
        }
    }

    pub fn is_mismatch(&self) -> bool {
        self.matches_theory == Some(false) || self.transmission_mismatches > 0
    }
}

fn certificate(
    scan: &OrderScan,
    family: Family,
    k: usize,
    opts: &ScanOptions,
) -> Result<ExtremalCertificate, VerifyError> {
    let n = scan.n;
    let empty = Bucket::new();
    let b = scan.bucket(family, k).unwrap_or(&empty);
    let applicable = family.in_range(n, k);
    let theory = applicable
        .then(|| family.extremal_graph(n, k))
        .transpose()?;
    let theory_rdd = theory.as_ref().map(rdd).transpose()?;
    let closed_form = match family {
        Family::CutEdge if applicable => Some(closed_form_gbar(n, k)?),
        _ => None,
    };
    let all_iso = applicable.then_some(b.count > 0 && b.all_iso);
    let matches = applicable.then(|| {
        b.max.is_some()
            && b.max == theory_rdd
            && closed_form.is_none_or(|c| b.max == Some(c))
            && all_iso == Some(true)
    });
    Ok(ExtremalCertificate {
        n,
        k,
        family,
        theory_applicable: applicable,
        max_rdd: b.max,
        maximizer_count_labeled: b.count,
        family_size: b.family_size,
        maximizers_graph6: b
            .retained
            .iter()
            .take(opts.retain)
            .map(|(_, g)| write_graph6(g))
            .collect(),
        theory_graph: theory.as_ref().map(write_graph6),
        theory_rdd,
        closed_form,
        all_maximizers_isomorphic_to_theory: all_iso,
        matches_theory: matches,
        transmission_checked: opts.cross_check,
        transmission_mismatches: b.transmission_mismatches,
        graphs_scanned: scan.graphs_scanned,
        elapsed_secs: scan.elapsed_secs,
    })
}

/// Exact maximum RDD over connected graphs of order `n` from `source` with
/// exactly `k` cut vertices or cut edges.
pub fn max_rdd_over_family(
    n: usize,
    k: usize,
    family: Family,
    source: Source<'_>,
    opts: &ScanOptions,
) -> Result<ExtremalCertificate, VerifyError> {
    let scan = scan_order(n, source, opts)?;
    certificate(&scan, family, k, opts)
}

/// The `k` values certified for a family at order `n`: the applicable range,
/// plus (for cut edges) the out-of-range `k <= n-1` reported empirically.
fn k_values(family: Family, n: usize) -> std::ops::RangeInclusive<usize> {
    match family {
        Family::CutVertex => 0..=n.saturating_sub(2),
        Family::CutEdge => 0..=n.saturating_sub(1),
    }
}

/// Certificates for both families over `2 <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCertificates {
    pub cut_vertex: Vec<ExtremalCertificate>,
    pub cut_edge: Vec<ExtremalCertificate>,
}

pub fn verify_theorems(
    n_max: usize,
    source: Source<'_>,
    opts: &ScanOptions,
) -> Result<TheoremCertificates, VerifyError> {
    if n_max > MAX_ENUM_N_BIG {
        return Err(VerifyError::Range {
            n: n_max,
            range: "n_max <= 8",
        });
    }
    with_pool(opts.jobs, || {
        let mut out = TheoremCertificates {
            cut_vertex: Vec::new(),
            cut_edge: Vec::new(),
        };
        for n in 2..=n_max {
            let scan = scan_order_in_pool(n, source, opts)?;
            for k in k_values(Family::CutVertex, n) {
                out.cut_vertex
                    .push(certificate(&scan, Family::CutVertex, k, opts)?);
            }
            for k in k_values(Family::CutEdge, n) {
                out.cut_edge
                    .push(certificate(&scan, Family::CutEdge, k, opts)?);
            }
        }
        Ok(out)
    })?
}

fn verify_family(
    family: Family,
    n_max: usize,
    source: Source<'_>,
    opts: &ScanOptions,
) -> Result<Vec<ExtremalCertificate>, VerifyError> {
    if n_max > MAX_ENUM_N_BIG {
        return Err(VerifyError::Range {
            n: n_max,
            range: "n_max <= 8",
        });
    }
    with_pool(opts.jobs, || {
        let mut out = Vec::new();
        for n in 2..=n_max {
            let scan = scan_order_in_pool(n, source, opts)?;
            for k in k_values(family, n) {
                out.push(certificate(&scan, family, k, opts)?);
            }
        }
        Ok(out)
    })?
}

/// Maximisers over `k` cut vertices for `2 <= n <= n_max`, `k <= n-2`.
pub fn verify_theorem_36(
    n_max: usize,
    source: Source<'_>,
    opts: &ScanOptions,
) -> Result<Vec<ExtremalCertificate>, VerifyError> {
    verify_family(Family::CutVertex, n_max, source, opts)
}

/// Maximisers over `k` cut edges for `2 <= n <= n_max`. `k <= n-3` is
/// compared with the extremal graph and the closed form; larger `k` is
/// reported without a theory comparison.
pub fn verify_theorem_43(
    n_max: usize,
    source: Source<'_>,
    opts: &ScanOptions,
) -> Result<Vec<ExtremalCertificate>, VerifyError> {
    verify_family(Family::CutEdge, n_max, source, opts)
}

/// CSV summary with columns `n,k,family,max_rdd_num,max_rdd_den,match`.
/// Empty families leave the value columns blank; `match` is blank outside
/// the applicable range.
pub fn certificates_csv(certs: &[ExtremalCertificate]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "k", "family", "max_rdd_num", "max_rdd_den", "match"])
        .expect("writing to memory");
    for c in certs {
        let (num, den) = c
            .max_rdd
            .map(|r| (r.numer().to_string(), r.denom().to_string()))
            .unwrap_or_default();
        let m = c.matches_theory.map(|b| b.to_string()).unwrap_or_default();
        w.write_record([
            c.n.to_string(),
            c.k.to_string(),
            c.family.to_string(),
            num,
            den,
            m,
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("ascii")
}

/// Name of the generator behind every randomised report.
pub const PRNG_NAME: &str = "ChaCha8";

/// Largest order produced by the random instance generators.
pub const MAX_RANDOM_N: usize = 14;

/// Random connected graph on `m >= 1` vertices: a random recursive tree
/// plus each remaining pair with probability `p`.
fn random_connected(rng: &mut ChaCha8Rng, m: usize, p: f64) -> Graph {
    let mut g = Graph::new(m).expect("small");
    for v in 1..m {
        let u = rng.random_range(0..v);
        g.set_edge(u, v, true);
    }
    for v in 0..m {
        for u in 0..v {
            if !g.has_edge(u, v) && rng.random_bool(p) {
                g.set_edge(u, v, true);
            }
        }
    }
    g
}

/// `u = 0`, `v = 1` with `N(u)\{v} = N(v)\{u} = W`, `W` the next `k`
/// vertices, plus `y` further vertices hanging off `W`. Returns the graph
/// and `W`.
fn twin_core(rng: &mut ChaCha8Rng, k: usize, y: usize, uv: bool) -> (Graph, Vec<usize>) {
    let h = random_connected(rng, k + y, 0.4);
    let mut g = Graph::new(2)
        .expect("small")
        .disjoint_union(&h)
        .expect("small");
    if uv {
        g.set_edge(0, 1, true);
    }
    let w: Vec<usize> = (2..2 + k).collect();
    for &x in &w {
        g.set_edge(0, x, true);
        g.set_edge(1, x, true);
    }
    (g, w)
}

fn shuffled(rng: &mut ChaCha8Rng, inst: GraftInstance) -> GraftInstance {
    let mut perm: Vec<usize> = (0..inst.graph().n()).collect();
    perm.shuffle(rng);
    inst.relabeled(&perm)
}

fn draw_l31(rng: &mut ChaCha8Rng) -> GraftInstance {
    let k = rng.random_range(1..=3);
    let y = rng.random_range(0..=2);
    let s = rng.random_range(1..=2);
    let t = rng.random_range(s + 2..=5);
    let (g, w) = twin_core(rng, k, y, true);
    let (mut g, x) = g
        .attach(&path_graph(t).expect("small"), 0, 0)
        .expect("small");
    let mut extra: Vec<usize> = Vec::new();
    for _ in 0..rng.random_range(0..=2) {
        let r = g.push_vertex().expect("small");
        let hosts: Vec<usize> = x.iter().chain(&extra).copied().collect();
        for _ in 0..rng.random_range(1..=2) {
            let h = hosts[rng.random_range(0..hosts.len())];
            g.set_edge(h, r, true);
        }
        extra.push(r);
    }
    let (g, z) = g
        .attach(&path_graph(s).expect("small"), 0, 1)
        .expect("small");
    GraftInstance::new(
        g,
        Roles::L31 {
            u: 0,
            v: 1,
            w,
            x,
            z,
        },
    )
}

fn draw_c33(rng: &mut ChaCha8Rng) -> GraftInstance {
    let k = rng.random_range(1..=3);
    let y = rng.random_range(0..=2);
    let s = rng.random_range(1..=3);
    let t = rng.random_range(s + 2..=s + 4);
    let (base, _) = twin_core(rng, k, y, true);
    attach_c33_paths(&base, 0, 1, t, s).expect("small")
}

fn draw_l34(rng: &mut ChaCha8Rng) -> GraftInstance {
    let p = rng.random_range(3..=5);
    let q = rng.random_range(3..=5);
    let s = rng.random_range(1..=3);
    let t = rng.random_range(s..=4);
    let kp_graph = complete_graph(p).expect("small");
    let (g, kq) = kp_graph
        .attach(&complete_graph(q).expect("small"), 0, 0)
        .expect("small");
    let kp: Vec<usize> = (0..p).collect();
    let (u, w1, v1) = (0, 1, kq[1]);
    let mut g = g;
    let hosts: Vec<usize> = kp
        .iter()
        .chain(&kq)
        .copied()
        .filter(|&c| c != u && c != w1 && c != v1)
        .collect();
    for h in hosts {
        if rng.random_bool(0.4) {
            let m = rng.random_range(2..=3);
            let piece = random_connected(rng, m, 0.5);
            let root = rng.random_range(0..m);
            g = g.attach(&piece, root, h).expect("small").0;
        }
    }
    let (g, w_path) = g
        .attach(&path_graph(t).expect("small"), 0, w1)
        .expect("small");
    let (g, v_path) = g
        .attach(&path_graph(s).expect("small"), 0, v1)
        .expect("small");
    GraftInstance::new(
        g,
        Roles::L34 {
            u,
            v1,
            w1,
            kp,
            kq,
            w_path,
            v_path,
        },
    )
}

fn draw_l41(rng: &mut ChaCha8Rng) -> GraftInstance {
    let a = rng.random_range(2..=6);
    let b = rng.random_range(2..=6);
    let g1 = random_connected(rng, a, 0.4);
    let g2 = random_connected(rng, b, 0.4);
    let mut g = g1.disjoint_union(&g2).expect("small");
    let w1 = rng.random_range(0..a);
    let w2 = a + rng.random_range(0..b);
    g.set_edge(w1, w2, true);
    GraftInstance::new(g, Roles::L41 { w1, w2 })
}

fn draw_l42(rng: &mut ChaCha8Rng) -> GraftInstance {
    let k = rng.random_range(1..=3);
    let y = rng.random_range(0..=2);
    let uv = rng.random_bool(0.5);
    let (mut g, _) = twin_core(rng, k, y, uv);
    for at in [0, 1] {
        let m = rng.random_range(2..=4);
        let piece = random_connected(rng, m, 0.4);
        let root = rng.random_range(0..m);
        g = g.attach(&piece, root, at).expect("small").0;
    }
    GraftInstance::new(g, Roles::L42 { u: 0, v: 1 })
}

/// `trials` validated instances of a rewrite, reproducible from `seed`.
/// Orders stay at most [`MAX_RANDOM_N`]; vertices are randomly relabelled.
/// Edge monotonicity has no rewrite instance, so `L21` yields nothing (see
/// [`random_graphs`]).
pub fn random_lemma_instances(lemma: LemmaId, trials: usize, seed: u64) -> Vec<GraftInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw: fn(&mut ChaCha8Rng) -> GraftInstance = match lemma {
        LemmaId::L21 => return Vec::new(),
        LemmaId::L31 => draw_l31,
        LemmaId::C33 => draw_c33,
        LemmaId::L34 => draw_l34,
        LemmaId::L41 => draw_l41,
        LemmaId::L42 => draw_l42,
    };
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let inst = draw(&mut rng);
        if inst.graph().n() > MAX_RANDOM_N {
            continue;
        }
        let inst = shuffled(&mut rng, inst);
        if let Ok(valid) = validate_instance(inst) {
            out.push(valid);
        }
    }
    out
}

/// `trials` random graphs on 2 to 10 vertices with random density,
/// connected or not, reproducible from `seed`.
pub fn random_graphs(trials: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let n = rng.random_range(2..=10);
            let p = rng.random_range(0.0..1.0);
            let mut g = Graph::new(n).expect("small");
            for v in 0..n {
                for u in 0..v {
                    if rng.random_bool(p) {
                        g.set_edge(u, v, true);
                    }
                }
            }
            g
        })
        .collect()
}

/// Outcome of a randomised rewrite check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub trials: usize,
    pub seed: u64,
    pub prng: String,
    /// Before/after comparisons made (several per trial for `l21` and
    /// `l42`).
    pub comparisons: u64,
    /// Graphs also evaluated through the transmission form.
    pub transmission_checked: u64,
    /// One line per failed comparison or conservation check; expected empty.
    pub failures: Vec<String>,
    /// Smallest RDD increase seen.
    pub min_gap: Option<Rational>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.min_gap.is_some_and(|g| g > Rational::ZERO)
    }
}

struct Tally {
    comparisons: u64,
    transmission_checked: u64,
    failures: Vec<String>,
    min_gap: Option<Rational>,
}

impl Tally {
    fn value(&mut self, g: &Graph) -> Result<Rational, VerifyError> {
        let a = rdd(g)?;
        let b = rdd_via_transmission(g)?;
        self.transmission_checked += 1;
        if a != b {
            self.failures.push(format!(
                "transmission form disagrees on {}: {a} vs {b}",
                write_edge_list(g)
            ));
        }
        Ok(a)
    }

    /// Records `after - before`, which must be positive.
    fn compare(&mut self, label: &str, lower: &Graph, higher: &Graph) -> Result<(), VerifyError> {
        let lo = self.value(lower)?;
        let hi = self.value(higher)?;
        self.comparisons += 1;
        let gap = hi - lo;
        if gap <= Rational::ZERO {
            self.failures.push(format!(
                "{label}: rdd {lo} -> {hi} from {} to {}",
                write_edge_list(lower),
                write_edge_list(higher)
            ));
        }
        self.min_gap = Some(self.min_gap.map_or(gap, |m| m.min(gap)));
        Ok(())
    }

    fn conserve(&mut self, label: &str, what: &str, before: usize, after: usize) {
        if before != after {
            self.failures
                .push(format!("{label}: {what} changed from {before} to {after}"));
        }
    }
}

/// Applies the rewrite to `trials` random validated instances (or, for
/// `l21`, adds and removes every pair of `trials` random graphs) and checks
/// that RDD strictly increases and the preserved counts are preserved.
pub fn check_lemma(lemma: LemmaId, trials: usize, seed: u64) -> Result<LemmaReport, VerifyError> {
    let mut t = Tally {
        comparisons: 0,
        transmission_checked: 0,
        failures: Vec::new(),
        min_gap: None,
    };
    if lemma == LemmaId::L21 {
        for (i, g) in random_graphs(trials, seed).iter().enumerate() {
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    let e = Edge::new(u, v).expect("u < v");
                    let label = format!("trial {i} pair {e}");
                    if g.has_edge(u, v) {
                        let smaller = g.remove_edge(e)?.graph;
                        t.compare(&label, &smaller, g)?;
                    } else {
                        let larger = g.add_edge(e)?.graph;
                        t.compare(&label, g, &larger)?;
                    }
                }
            }
        }
    } else {
        for (i, inst) in random_lemma_instances(lemma, trials, seed)
            .iter()
            .enumerate()
        {
            let g = inst.graph();
            let label = format!("trial {i}");
            let (cv, ce) = cut_counts(g);
            let mut after = Vec::new();
            match lemma {
                LemmaId::L31 => after.push(graft_l31(inst)?),
                LemmaId::C33 => after.push(shift_pendant_paths_c33(inst)?.graph().clone()),
                LemmaId::L34 => after.push(graft_l34(inst)?),
                LemmaId::L41 => after.push(contract_cut_edge_l41(inst)?),
                LemmaId::L42 => {
                    let (h1, h2) = merge_blocks_l42(inst)?;
                    after.extend([h1, h2]);
                }
                LemmaId::L21 => unreachable!(),
            }
            for h in &after {
                t.compare(&label, g, h)?;
                t.conserve(&label, "vertex count", g.n(), h.n());
                let (hcv, hce) = cut_counts(h);
                match lemma {
                    LemmaId::L31 | LemmaId::C33 | LemmaId::L34 => {
                        t.conserve(&label, "cut-vertex count", cv, hcv)
                    }
                    LemmaId::L41 => t.conserve(&label, "cut-edge count", ce, hce),
                    _ => {}
                }
            }
        }
    }
    Ok(LemmaReport {
        lemma,
        trials,
        seed,
        prng: PRNG_NAME.to_string(),
        comparisons: t.comparisons,
        transmission_checked: t.transmission_checked,
        failures: t.failures,
        min_gap: t.min_gap,
    })
}
