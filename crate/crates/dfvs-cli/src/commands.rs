//! Subcommand implementations. Every command returns the process exit code:
//! 0 for yes/valid, 1 for no/invalid, 2 (via `CmdError`) for any input or
//! contract error.

use crate::io::{
    format_arc, parse_arc_set, parse_edge_list, parse_vertex_set, serialize_arc_set,
    serialize_edge_list, serialize_vertex_set, ParseError,
};
use crate::report::StatsReport;
use clap::{Args, ValueEnum};
use dfvs::oracle::{
    all_digraphs, brute_important_cuts, brute_min_dfas, brute_min_dfvs, generate, GenKind,
    GenSpec,
};
use dfvs::{
    expand_all, gamma_epsilon, minimize_dfvs_full, solve_compression, solve_dfasv,
    solve_dfvs_full, CompressionInstance, CutProblem, DfasvInstance, DiGraph, DriverOptions,
    GraphView, SearchStats, VertexId, VertexSet,
};
use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug)]
pub enum CmdError {
    File { path: PathBuf, source: std::io::Error },
    Format { path: PathBuf, source: ParseError },
    Invalid(String),
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::File { path, source } => write!(f, "{}: {source}", path.display()),
            CmdError::Format { path, source } => write!(f, "{}: {source}", path.display()),
            CmdError::Invalid(message) => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for CmdError {}

fn invalid(e: impl fmt::Display) -> CmdError {
    CmdError::Invalid(e.to_string())
}

fn read_file(path: &Path) -> Result<String, CmdError> {
    fs::read_to_string(path).map_err(|source| CmdError::File { path: path.to_owned(), source })
}

fn write_file(path: &Path, content: &str) -> Result<(), CmdError> {
    fs::write(path, content).map_err(|source| CmdError::File { path: path.to_owned(), source })
}

fn load_graph(path: &Path) -> Result<DiGraph, CmdError> {
    parse_edge_list(&read_file(path)?)
        .map_err(|source| CmdError::Format { path: path.to_owned(), source })
}

fn load_vertex_set(path: &Path, n: usize) -> Result<VertexSet, CmdError> {
    parse_vertex_set(&read_file(path)?, n)
        .map_err(|source| CmdError::Format { path: path.to_owned(), source })
}

fn check_eps(eps: f64) -> Result<(), CmdError> {
    gamma_epsilon(eps).map_err(invalid)?;
    Ok(())
}

fn write_stats(
    path: Option<&PathBuf>,
    stats: &SearchStats,
    k: usize,
    eps: f64,
    wall_time_ms: u128,
) -> Result<(), CmdError> {
    if let Some(path) = path {
        let report = StatsReport { stats: stats.clone(), k, eps, wall_time_ms };
        write_file(path, &report.render())?;
    }
    Ok(())
}

fn is_valid_dfvs(g: &DiGraph, s: &VertexSet) -> bool {
    let mut view = GraphView::new(g);
    view.remove_vertex_set(s);
    view.is_acyclic()
}

fn print_vertex_solution(s: &VertexSet) {
    println!("SIZE {}", s.len());
    print!("{}", serialize_vertex_set(s));
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Graph file in edge-list format
    #[arg(long)]
    pub input: PathBuf,
    /// Solution size budget; with --minimize, the ceiling on the optimum
    #[arg(long)]
    pub k: usize,
    /// Report the smallest feasible size instead of the first fit
    #[arg(long)]
    pub minimize: bool,
    /// Re-check the witness before printing it
    #[arg(long)]
    pub verify: bool,
    /// Write a stats report to this path
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Epsilon for the reported gamma value, in (0, 1/2) exclusive
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    /// Solve strongly connected components independently
    #[arg(long = "scc-split")]
    pub scc_split: bool,
}

pub fn cmd_solve(args: &SolveArgs) -> Result<u8, CmdError> {
    check_eps(args.eps)?;
    let g = load_graph(&args.input)?;
    let opts = DriverOptions { scc_split: args.scc_split };
    let mut stats = SearchStats::new();
    let start = Instant::now();
    let witness = if args.minimize {
        minimize_dfvs_full(&g, args.k, opts, &mut stats)
            .map_err(invalid)?
            .map(|(_, w)| w)
    } else {
        solve_dfvs_full(&g, args.k, opts, &mut stats).map_err(invalid)?
    };
    let wall = start.elapsed().as_millis();
    write_stats(args.stats.as_ref(), &stats, args.k, args.eps, wall)?;
    match witness {
        Some(s) => {
            if args.verify && !(s.len() <= args.k && is_valid_dfvs(&g, &s)) {
                return Err(CmdError::Invalid(
                    "internal error: witness failed verification".into(),
                ));
            }
            print_vertex_solution(&s);
            Ok(0)
        }
        None => {
            println!("NO");
            Ok(1)
        }
    }
}

#[derive(Args, Debug)]
pub struct DfasvArgs {
    /// Graph file in edge-list format
    #[arg(long)]
    pub input: PathBuf,
    /// File listing the hint vertices (must be a feedback vertex set)
    #[arg(long)]
    pub hint: PathBuf,
    /// Arc budget
    #[arg(long)]
    pub k: usize,
    /// Write a stats report to this path
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Epsilon for the reported gamma value, in (0, 1/2) exclusive
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
}

pub fn cmd_dfasv(args: &DfasvArgs) -> Result<u8, CmdError> {
    check_eps(args.eps)?;
    let g = load_graph(&args.input)?;
    let w = load_vertex_set(&args.hint, g.vertex_count())?;
    let inst = DfasvInstance::new(GraphView::new(&g), w, args.k).map_err(invalid)?;
    let mut stats = SearchStats::new();
    let start = Instant::now();
    let solution = solve_dfasv(&inst, &mut stats);
    let wall = start.elapsed().as_millis();
    write_stats(args.stats.as_ref(), &stats, args.k, args.eps, wall)?;
    match solution {
        Some(f) => {
            println!("SIZE {}", f.len());
            print!("{}", serialize_arc_set(&f, &g));
            Ok(0)
        }
        None => {
            println!("NO");
            Ok(1)
        }
    }
}

#[derive(Args, Debug)]
pub struct CompressArgs {
    /// Graph file in edge-list format
    #[arg(long)]
    pub input: PathBuf,
    /// File listing the witness vertices (a feedback vertex set of size ≤ k+1)
    #[arg(long)]
    pub hint: PathBuf,
    /// Target solution size
    #[arg(long)]
    pub k: usize,
    /// Write a stats report to this path
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Epsilon for the reported gamma value, in (0, 1/2) exclusive
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
}

pub fn cmd_compress(args: &CompressArgs) -> Result<u8, CmdError> {
    check_eps(args.eps)?;
    let g = load_graph(&args.input)?;
    let w = load_vertex_set(&args.hint, g.vertex_count())?;
    let inst = CompressionInstance::new(&g, w, args.k).map_err(invalid)?;
    let mut stats = SearchStats::new();
    let start = Instant::now();
    let solution = solve_compression(&inst, &mut stats);
    let wall = start.elapsed().as_millis();
    write_stats(args.stats.as_ref(), &stats, args.k, args.eps, wall)?;
    match solution {
        Some(s) => {
            print_vertex_solution(&s);
            Ok(0)
        }
        None => {
            println!("NO");
            Ok(1)
        }
    }
}

#[derive(Args, Debug)]
pub struct ImpcutsArgs {
    /// Graph file in edge-list format
    #[arg(long)]
    pub input: PathBuf,
    /// Source-side vertex ids, comma separated (1-based)
    #[arg(long)]
    pub x: String,
    /// Target-side vertex ids, comma separated (1-based)
    #[arg(long)]
    pub y: String,
    /// Cut size budget
    #[arg(long)]
    pub k: usize,
}

fn parse_id_list(list: &str, n: usize, what: &str) -> Result<VertexSet, CmdError> {
    let mut set = VertexSet::new(n);
    for token in list.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let id: usize = token
            .parse()
            .map_err(|_| CmdError::Invalid(format!("{what}: invalid vertex id '{token}'")))?;
        if id == 0 || id > n {
            return Err(CmdError::Invalid(format!(
                "{what}: vertex id {id} out of range [1, {n}]"
            )));
        }
        if !set.insert(VertexId::new(id - 1)) {
            return Err(CmdError::Invalid(format!("{what}: duplicate vertex id {id}")));
        }
    }
    Ok(set)
}

pub fn cmd_impcuts(args: &ImpcutsArgs) -> Result<u8, CmdError> {
    let g = load_graph(&args.input)?;
    let x = parse_id_list(&args.x, g.vertex_count(), "--x")?;
    let y = parse_id_list(&args.y, g.vertex_count(), "--y")?;
    let problem = CutProblem::new(GraphView::new(&g), x, y, args.k).map_err(invalid)?;
    let cuts = problem.enumerate_important_cuts();
    println!("{}", cuts.len());
    for cut in &cuts {
        let line = cut
            .arcs
            .iter()
            .map(|a| format_arc(&g, a))
            .collect::<Vec<_>>()
            .join(" ");
        println!("{line}");
    }
    Ok(0)
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum KindArg {
    ErdosRenyi,
    Tournament,
    PlantedDfvs,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Instance family
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Vertex count
    #[arg(long)]
    pub n: usize,
    /// Arc probability (erdos-renyi and planted-dfvs)
    #[arg(long)]
    pub p: Option<f64>,
    /// Size of the planted feedback vertex set (planted-dfvs)
    #[arg(long = "planted-k")]
    pub planted_k: Option<usize>,
    /// Generator seed
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Allow self-loops (erdos-renyi)
    #[arg(long = "include-loops")]
    pub include_loops: bool,
    /// Output path; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
}

const MAX_GEN_N: usize = 100_000;

fn require_p(p: Option<f64>) -> Result<f64, CmdError> {
    let p = p.ok_or_else(|| CmdError::Invalid("--p is required for this kind".into()))?;
    if !(0.0..=1.0).contains(&p) {
        return Err(CmdError::Invalid(format!("--p {p} is outside [0, 1]")));
    }
    Ok(p)
}

pub fn cmd_gen(args: &GenArgs) -> Result<u8, CmdError> {
    if args.n > MAX_GEN_N {
        return Err(CmdError::Invalid(format!("--n {} exceeds {MAX_GEN_N}", args.n)));
    }
    let kind = match args.kind {
        KindArg::ErdosRenyi => GenKind::ErdosRenyi {
            p: require_p(args.p)?,
            include_loops: args.include_loops,
        },
        KindArg::Tournament => GenKind::Tournament,
        KindArg::PlantedDfvs => {
            let planted_k = args
                .planted_k
                .ok_or_else(|| CmdError::Invalid("--planted-k is required for this kind".into()))?;
            if planted_k > args.n {
                return Err(CmdError::Invalid(format!(
                    "--planted-k {planted_k} exceeds --n {}",
                    args.n
                )));
            }
            GenKind::PlantedDfvs { planted_k, p: require_p(args.p)? }
        }
    };
    let spec = GenSpec { kind, n: args.n, seed: args.seed };
    let (g, _) = generate(&spec);
    let text = serialize_edge_list(&g);
    match &args.output {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VerifyMode {
    Dfvs,
    Dfas,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Graph file in edge-list format
    #[arg(long)]
    pub input: PathBuf,
    /// Witness file: vertex ids for dfvs, arc triples for dfas
    #[arg(long)]
    pub witness: PathBuf,
    /// What the witness claims to be
    #[arg(long, value_enum)]
    pub mode: VerifyMode,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<u8, CmdError> {
    let g = load_graph(&args.input)?;
    let text = read_file(&args.witness)?;
    let mut view = GraphView::new(&g);
    match args.mode {
        VerifyMode::Dfvs => {
            let s = parse_vertex_set(&text, g.vertex_count())
                .map_err(|source| CmdError::Format { path: args.witness.clone(), source })?;
            view.remove_vertex_set(&s);
        }
        VerifyMode::Dfas => {
            let s = parse_arc_set(&text, &g)
                .map_err(|source| CmdError::Format { path: args.witness.clone(), source })?;
            view.remove_arc_set(&s);
        }
    }
    if view.is_acyclic() {
        println!("VALID");
        Ok(0)
    } else {
        println!("INVALID");
        Ok(1)
    }
}

fn run_check(name: &str, failures: &mut u32, check: impl FnOnce() -> bool) {
    let ok = check();
    println!("{name}: {}", if ok { "ok" } else { "FAIL" });
    if !ok {
        *failures += 1;
    }
}

/// A small built-in differential battery: solver answers against brute force
/// on exhaustive tiny graphs and a few seeded random ones.
pub fn cmd_selftest() -> Result<u8, CmdError> {
    let mut failures = 0;

    run_check("minimize matches brute force on tiny digraphs", &mut failures, || {
        let families = all_digraphs(3, false).chain(all_digraphs(2, true));
        families.into_iter().all(|g| {
            let (opt, _) = brute_min_dfvs(&g);
            match dfvs::minimize_dfvs(&g, g.vertex_count()) {
                Ok(Some((got, s))) => got == opt && is_valid_dfvs(&g, &s),
                _ => false,
            }
        })
    });

    run_check("important cuts match brute force on tiny digraphs", &mut failures, || {
        all_digraphs(3, false).all(|g| {
            let n = g.vertex_count();
            (0..n).all(|xi| {
                (0..n).filter(|&yi| yi != xi).all(|yi| {
                    (0..=2usize).all(|k| {
                        let x = VertexSet::from_ids(n, [VertexId::new(xi)]);
                        let y = VertexSet::from_ids(n, [VertexId::new(yi)]);
                        let problem =
                            CutProblem::new(GraphView::new(&g), x.clone(), y.clone(), k)
                                .expect("distinct singletons");
                        let got: BTreeSet<_> = problem
                            .enumerate_important_cuts()
                            .into_iter()
                            .map(|c| c.arcs.to_sorted_vec())
                            .collect();
                        got == brute_important_cuts(&g, &x, &y, k)
                    })
                })
            })
        })
    });

    run_check("vertex expansion preserves the optimum", &mut failures, || {
        all_digraphs(3, false).all(|g| {
            let (expanded, _) = expand_all(&g);
            brute_min_dfvs(&g).0 == brute_min_dfas(&expanded).0
        })
    });

    run_check("minimize matches brute force on random graphs", &mut failures, || {
        (0..10u64).all(|seed| {
            let spec = GenSpec {
                kind: GenKind::ErdosRenyi { p: 0.3, include_loops: false },
                n: 7,
                seed,
            };
            let (g, _) = generate(&spec);
            let (opt, _) = brute_min_dfvs(&g);
            matches!(dfvs::minimize_dfvs(&g, 7), Ok(Some((got, _))) if got == opt)
        })
    });

    if failures == 0 {
        println!("SELFTEST OK");
        Ok(0)
    } else {
        println!("SELFTEST FAILED ({failures} checks)");
        Ok(1)
    }
}
