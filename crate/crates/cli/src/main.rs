use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rdd_core::codec::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use rdd_core::families::{closed_form_gbar, Family, FamilySpec};
use rdd_core::graft::{
    contract_cut_edge_l41, graft_l31, graft_l34, merge_blocks_l42, shift_pendant_paths_c33,
    validate_instance, InstanceFile, LemmaId,
};
use rdd_core::metrics::{degree_distance, harary, index_report, rdd, wiener, IndexReport};
use rdd_core::structure::{cut_counts, cut_structure, pendant_paths, PendantPath};
use rdd_core::verify::{
    certificates_csv, check_lemma, enumerate_connected, enumerate_from_file, verify_theorem_36,
    verify_theorem_43, ExtremalCertificate, ScanOptions, Source, DEFAULT_RETAINED_MAXIMIZERS,
};
use rdd_core::{Edge, Graph, Rational};

/// Exact reciprocal degree distance and friends on small graphs.
#[derive(Parser)]
#[command(name = "rdd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute distance-degree indices.
    Compute(ComputeArgs),
    /// Build an extremal graph.
    Construct(ConstructArgs),
    /// Apply a grafting rewrite to an instance file.
    Transform(TransformArgs),
    /// Cut vertices, cut edges, blocks and pendant paths.
    Structure(StructureArgs),
    /// Closed-form RDD of the cut-edge extremal graph.
    ClosedForm(ClosedFormArgs),
    /// Exhaustively certify the extremal graphs.
    Verify(VerifyArgs),
    /// Stream connected labelled graphs as graph6.
    Enumerate(EnumerateArgs),
    /// Check a rewrite on random instances.
    CheckLemma(CheckLemmaArgs),
}

/// Where graphs come from; stdin (graph6, one per line) when neither flag
/// is given.
#[derive(Args)]
#[group(multiple = false)]
struct Input {
    /// Inline edge list, e.g. "3; 0-1, 1-2".
    #[arg(long)]
    edges: Option<String>,
    /// File of graph6 lines.
    #[arg(long)]
    g6: Option<PathBuf>,
}

impl Input {
    fn graphs(&self) -> Result<Vec<Graph>> {
        if let Some(text) = &self.edges {
            let parsed =
                parse_edge_list(text).with_context(|| format!("parsing edge list {text:?}"))?;
            for e in &parsed.duplicates {
                eprintln!("warning: duplicate edge {e} ignored");
            }
            return Ok(vec![parsed.graph]);
        }
        if let Some(path) = &self.g6 {
            return Ok(enumerate_from_file(path)?.collect::<Result<_, _>>()?);
        }
        let mut out = Vec::new();
        for (i, line) in io::stdin().lock().lines().enumerate() {
            let line = line.context("reading stdin")?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(
                parse_graph6(line.trim_end().as_bytes())
                    .with_context(|| format!("stdin line {}", i + 1))?,
            );
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Index {
    Rdd,
    Wiener,
    Harary,
    Dd,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Graph6,
    Edges,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_enum, default_value = "all")]
    index: Index,
    #[command(flatten)]
    input: Input,
    /// text or json (one report per line).
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gnk,
    Gbar,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Gnk => Family::CutVertex,
            FamilyArg::Gbar => Family::CutEdge,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// graph6, edges or json.
    #[arg(long, value_enum, default_value = "graph6")]
    out: Format,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    lemma: LemmaId,
    /// JSON instance: {"lemma": ..., "graph": "<edge list>" or "g6": ..., roles...}.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct StructureArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ClosedFormArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// Maximiser over k cut vertices.
    Thm36,
    /// Maximiser over k cut edges.
    Thm43,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    #[arg(long)]
    n_max: usize,
    /// Allow built-in enumeration at n = 8.
    #[arg(long)]
    big: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Scan graphs from a graph6 file instead of enumerating.
    #[arg(long)]
    from_g6: Option<PathBuf>,
    /// Also evaluate every graph through the transmission form.
    #[arg(long)]
    cross_check: bool,
    /// Labelled maximisers kept per certificate.
    #[arg(long, env = "RDD_MAX_RETAINED_MAXIMIZERS", default_value_t = DEFAULT_RETAINED_MAXIMIZERS)]
    retain: usize,
    /// json or csv.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
#[group(id = "filter", multiple = false)]
struct EnumerateFilter {
    #[arg(long)]
    cut_vertices: Option<usize>,
    #[arg(long)]
    cut_edges: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    filter: EnumerateFilter,
    #[arg(long)]
    big: bool,
}

#[derive(Args)]
struct CheckLemmaArgs {
    #[arg(long)]
    lemma: LemmaId,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
}

/// Outcome of a successful run.
enum Status {
    Ok,
    Mismatch,
}

fn rational(r: &Rational) -> String {
    r.display_with_decimal()
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn compute(args: &ComputeArgs, out: &mut impl Write) -> Result<Status> {
    for g in args.input.graphs()? {
        match (args.format, args.index) {
            (Format::Json, _) => {
                let report = index_report(&g)?;
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            }
            (Format::Text, Index::All) => {
                let IndexReport {
                    rdd,
                    harary,
                    wiener,
                    dd,
                    ..
                } = index_report(&g)?;
                let opt = |r: Option<Rational>| {
                    r.map_or("undefined (disconnected)".to_string(), |r| rational(&r))
                };
                writeln!(
                    out,
                    "rdd={} harary={} wiener={} dd={}",
                    rational(&rdd),
                    rational(&harary),
                    opt(wiener),
                    opt(dd)
                )?;
            }
            (Format::Text, index) => {
                let value = match index {
                    Index::Rdd => rdd(&g)?,
                    Index::Wiener => wiener(&g)?,
                    Index::Harary => harary(&g)?,
                    Index::Dd => degree_distance(&g)?,
                    Index::All => unreachable!(),
                };
                writeln!(out, "{}", rational(&value))?;
            }
            _ => bail!("compute supports --format text or json"),
        }
    }
    Ok(Status::Ok)
}

fn write_graph(out: &mut impl Write, g: &Graph, format: Format) -> Result<()> {
    match format {
        Format::Graph6 => writeln!(out, "{}", write_graph6(g))?,
        Format::Edges | Format::Text => writeln!(out, "{}", write_edge_list(g))?,
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                graph6: String,
                edges: String,
                rdd: Rational,
            }
            print_json(
                out,
                &Out {
                    graph6: write_graph6(g),
                    edges: write_edge_list(g),
                    rdd: rdd(g)?,
                },
            )?;
        }
        Format::Csv => bail!("graphs cannot be written as csv"),
    }
    Ok(())
}

fn construct(args: &ConstructArgs, out: &mut impl Write) -> Result<Status> {
    let g = FamilySpec::new(args.family.into(), args.n, args.k)?.build();
    write_graph(out, &g, args.out)?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct Evaluated {
    graph6: String,
    edges: String,
    rdd: Rational,
}

impl Evaluated {
    fn of(g: &Graph) -> Result<Evaluated> {
        Ok(Evaluated {
            graph6: write_graph6(g),
            edges: write_edge_list(g),
            rdd: rdd(g)?,
        })
    }
}

#[derive(Serialize)]
struct TransformReport {
    lemma: LemmaId,
    before: Evaluated,
    after: Vec<Evaluated>,
    increased: bool,
}

fn transform(args: &TransformArgs, out: &mut impl Write) -> Result<Status> {
    let text = fs::read_to_string(&args.instance)
        .with_context(|| format!("reading {}", args.instance.display()))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.instance.display()))?;
    if file.roles.lemma() != args.lemma {
        bail!(
            "instance file is for {}, but --lemma {} was given",
            file.roles.lemma(),
            args.lemma
        );
    }
    let inst = validate_instance(file.into_instance()?)?;
    let after = match args.lemma {
        LemmaId::L31 => vec![graft_l31(&inst)?],
        LemmaId::C33 => vec![shift_pendant_paths_c33(&inst)?.graph().clone()],
        LemmaId::L34 => vec![graft_l34(&inst)?],
        LemmaId::L41 => vec![contract_cut_edge_l41(&inst)?],
        LemmaId::L42 => {
            let (h1, h2) = merge_blocks_l42(&inst)?;
            vec![h1, h2]
        }
        LemmaId::L21 => bail!("l21 is edge monotonicity and has no rewrite; use check-lemma"),
    };
    let before = Evaluated::of(inst.graph())?;
    let after = after
        .iter()
        .map(Evaluated::of)
        .collect::<Result<Vec<_>>>()?;
    let increased = after.iter().all(|a| a.rdd > before.rdd);
    let report = TransformReport {
        lemma: args.lemma,
        before,
        after,
        increased,
    };
    match args.format {
        Format::Json => print_json(out, &report)?,
        Format::Graph6 => {
            for a in &report.after {
                writeln!(out, "{}", a.graph6)?;
            }
        }
        _ => {
            writeln!(
                out,
                "before {} rdd {}",
                report.before.graph6,
                rational(&report.before.rdd)
            )?;
            for a in &report.after {
                writeln!(out, "after  {} rdd {}", a.graph6, rational(&a.rdd))?;
            }
        }
    }
    Ok(if increased {
        Status::Ok
    } else {
        Status::Mismatch
    })
}

#[derive(Serialize)]
struct StructureReport {
    n: usize,
    cut_vertices: Vec<usize>,
    cut_edges: Vec<String>,
    blocks: Vec<Vec<String>>,
    pendant_paths: Vec<PendantPath>,
}

fn structure(args: &StructureArgs, out: &mut impl Write) -> Result<Status> {
    let names = |es: &[Edge]| es.iter().map(Edge::to_string).collect::<Vec<_>>();
    for g in args.input.graphs()? {
        let cs = cut_structure(&g);
        let report = StructureReport {
            n: g.n(),
            cut_vertices: cs.cut_vertices.clone(),
            cut_edges: names(&cs.cut_edges),
            blocks: cs.blocks.iter().map(|b| names(b)).collect(),
            pendant_paths: pendant_paths(&g),
        };
        match args.format {
            Format::Json => print_json(out, &report)?,
            _ => {
                writeln!(out, "cut vertices: {:?}", report.cut_vertices)?;
                writeln!(out, "cut edges: {}", report.cut_edges.join(", "))?;
                for b in &report.blocks {
                    writeln!(out, "block: {}", b.join(", "))?;
                }
                for p in &report.pendant_paths {
                    writeln!(out, "pendant path at {}: {:?}", p.anchor, p.path_vertices)?;
                }
            }
        }
    }
    Ok(Status::Ok)
}

fn closed_form(args: &ClosedFormArgs, out: &mut impl Write) -> Result<Status> {
    writeln!(out, "{}", rational(&closed_form_gbar(args.n, args.k)?))?;
    Ok(Status::Ok)
}

fn verify(args: &VerifyArgs, out: &mut impl Write) -> Result<Status> {
    let opts = ScanOptions {
        jobs: args.jobs,
        retain: args.retain,
        cross_check: args.cross_check,
        allow_big: args.big,
    };
    let graphs = match &args.from_g6 {
        Some(path) => Some(enumerate_from_file(path)?.collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let source = graphs.as_deref().map_or(Source::Labeled, Source::Graphs);
    let certs = match args.theorem {
        Theorem::Thm36 => verify_theorem_36(args.n_max, source, &opts)?,
        Theorem::Thm43 => verify_theorem_43(args.n_max, source, &opts)?,
    };
    match args.format {
        Format::Csv => write!(out, "{}", certificates_csv(&certs))?,
        Format::Json => print_json(out, &certs)?,
        _ => bail!("verify supports --format json or csv"),
    }
    let bad: Vec<&ExtremalCertificate> = certs.iter().filter(|c| c.is_mismatch()).collect();
    for c in &bad {
        eprintln!(
            "MISMATCH n={} k={} family={}: max {} over {} maximisers, expected {} ({}), isomorphic: {:?}, transmission mismatches: {}",
            c.n,
            c.k,
            c.family,
            c.max_rdd.map_or("none".into(), |r| rational(&r)),
            c.maximizer_count_labeled,
            c.theory_rdd.map_or("none".into(), |r| rational(&r)),
            c.theory_graph.as_deref().unwrap_or("-"),
            c.all_maximizers_isomorphic_to_theory,
            c.transmission_mismatches,
        );
        for g in &c.maximizers_graph6 {
            eprintln!("  maximiser {g}");
        }
    }
    Ok(if bad.is_empty() {
        Status::Ok
    } else {
        Status::Mismatch
    })
}

fn enumerate(args: &EnumerateArgs, out: &mut impl Write) -> Result<Status> {
    for g in enumerate_connected(args.n, args.big)? {
        let keep = match (args.filter.cut_vertices, args.filter.cut_edges) {
            (Some(k), _) => cut_counts(&g).0 == k,
            (_, Some(k)) => cut_counts(&g).1 == k,
            _ => true,
        };
        if keep {
            writeln!(out, "{}", write_graph6(&g))?;
        }
    }
    Ok(Status::Ok)
}

fn check(args: &CheckLemmaArgs, out: &mut impl Write) -> Result<Status> {
    let report = check_lemma(args.lemma, args.trials, args.seed)?;
    print_json(out, &report)?;
    if !report.passed() {
        for f in &report.failures {
            eprintln!("FAILURE {f}");
        }
        return Ok(Status::Mismatch);
    }
    Ok(Status::Ok)
}

fn run(cli: &Cli) -> Result<Status> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let status = match &cli.command {
        Command::Compute(a) => compute(a, &mut out),
        Command::Construct(a) => construct(a, &mut out),
        Command::Transform(a) => transform(a, &mut out),
        Command::Structure(a) => structure(a, &mut out),
        Command::ClosedForm(a) => closed_form(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
        Command::Enumerate(a) => enumerate(a, &mut out),
        Command::CheckLemma(a) => check(a, &mut out),
    }?;
    out.flush()?;
    Ok(status)
}

/// Usage of the subcommand named in `args`, or of the whole tool.
fn usage_for(mut args: impl Iterator<Item = String>) -> String {
    let mut cmd = Cli::command();
    let name = args.find(|a| !a.starts_with('-'));
    match name.and_then(|n| cmd.find_subcommand_mut(&n).map(|c| c.render_usage())) {
        Some(u) => u.to_string(),
        None => cmd.render_usage().to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            if !e.render().to_string().contains("Usage:") {
                eprintln!("\n{}", usage_for(std::env::args().skip(1)));
            }
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
