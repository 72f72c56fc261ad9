use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathcert::certificate::{verify, Certificate, Verdict};
use pathcert::dichotomy::{bounds, spider_dichotomy, tree_dichotomy, Outcome};
use pathcert::embed::{find_path_induced, SearchOptions, SearchOutcome};
use pathcert::families::{brute_force_path_induced, chromatic_number_exact, clique_number_exact, FamilySpec};
use pathcert::io::{read_graph_auto, write_dimacs, write_graph_json};
use pathcert::refine::{refine_embedding, Goals, RefineOutcome};
use pathcert::tree::{spider_cover, TreeJson};
use pathcert::{Graph, RootedTree};

/// Largest clique bound and spider depth accepted on the command line.
const MAX_T: usize = 6;
const MAX_K: usize = 4;

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pathcert",
    version,
    about = "Path-induced tree embeddings or bounded colorings, with checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from one of the built-in families.
    Gen(GenArgs),
    /// Search for a path-induced copy of a tree.
    Find(FindArgs),
    /// Produce an embedding or a bounded coloring certificate.
    Dichotomy(DichotomyArgs),
    /// Check a certificate against a graph.
    Verify(VerifyArgs),
    /// Exact answers for small inputs.
    Oracle(OracleArgs),
    /// Extract a structured sub-copy from an embedding certificate.
    Refine(RefineArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Mycielski,
    Kneser,
    #[value(name = "complete_bipartite", alias = "complete-bipartite")]
    CompleteBipartite,
    Random,
    Path,
    Cycle,
    Complete,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `.json` writes JSON, anything else DIMACS; stdout gets DIMACS.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TreeArgs {
    /// Spider branching; use with --k.
    #[arg(long, requires = "k", conflicts_with_all = ["tree", "tree_path"])]
    d: Option<usize>,
    /// Spider depth; use with --d.
    #[arg(long, requires = "d")]
    k: Option<usize>,
    /// Tree in JSON form.
    #[arg(long, conflicts_with = "tree_path")]
    tree: Option<PathBuf>,
    /// Path on this many vertices, rooted at an end.
    #[arg(long)]
    tree_path: Option<usize>,
}

enum TreeSource {
    Spider(usize, usize),
    Tree(RootedTree),
}

impl TreeSource {
    fn tree(&self) -> Result<RootedTree, String> {
        match self {
            TreeSource::Spider(d, k) => RootedTree::spider(*d, *k).map_err(|e| e.to_string()),
            TreeSource::Tree(t) => Ok(t.clone()),
        }
    }
}

impl TreeArgs {
    fn resolve(&self) -> Result<TreeSource, String> {
        match (self.d, self.k, &self.tree, self.tree_path) {
            (Some(d), Some(k), None, None) => Ok(TreeSource::Spider(d, k)),
            (None, None, Some(path), None) => {
                let text = read(path)?;
                let json: TreeJson = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                RootedTree::from_json(&json).map(TreeSource::Tree).map_err(|e| format!("{}: {e}", path.display()))
            }
            (None, None, None, Some(m)) => RootedTree::path(m).map(TreeSource::Tree).map_err(|e| e.to_string()),
            _ => Err("give the tree as --d/--k, --tree or --tree-path".into()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Witness,
}

#[derive(Args)]
struct FindArgs {
    #[command(flatten)]
    tree: TreeArgs,
    #[arg(long)]
    graph: PathBuf,
    /// Graph vertex the root must map to.
    #[arg(long)]
    anchor: Option<usize>,
    /// Exit with status 1 when no copy exists.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    /// Candidate assignments before giving up (exit status 3).
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Order isomorphic sibling subtrees to skip symmetric work.
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DichotomyArgs {
    #[command(flatten)]
    tree: TreeArgs,
    /// Clique bound: the coloring promise assumes no clique of this size.
    #[arg(long)]
    t: usize,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuery {
    Chi,
    Omega,
    Embed,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    query: OracleQuery,
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    tree: TreeArgs,
    #[arg(long)]
    anchor: Option<usize>,
}

#[derive(Args)]
struct RefineArgs {
    #[arg(long)]
    cert: PathBuf,
    #[arg(long)]
    graph: PathBuf,
    /// Branching of the refined spider.
    #[arg(long)]
    d: usize,
    /// Comma-separated: level_stable, type_uniform.
    #[arg(long, default_value = "level_stable,type_uniform")]
    goals: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

// A closed stdout (for example `| head`) is not an error worth a panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    read_graph_auto(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, String> {
    value.ok_or_else(|| format!("--{flag} is required for this family"))
}

fn gen(a: &GenArgs) -> Result<u8, String> {
    let spec = match a.family {
        Family::Mycielski => FamilySpec::Mycielski { iterations: need(a.iterations, "iterations")? },
        Family::Kneser => FamilySpec::Kneser { n: need(a.n, "n")?, s: need(a.s, "s")? },
        Family::CompleteBipartite => FamilySpec::CompleteBipartite { m: need(a.m, "m")?, n: need(a.n, "n")? },
        Family::Random => FamilySpec::Random { n: need(a.n, "n")?, p: need(a.p, "p")?, seed: a.seed },
        Family::Path => FamilySpec::Path { n: need(a.n, "n")? },
        Family::Cycle => FamilySpec::Cycle { n: need(a.n, "n")? },
        Family::Complete => FamilySpec::Complete { n: need(a.n, "n")? },
    };
    let g = spec.build().map_err(|e| e.to_string())?;
    let json = a.out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "json"));
    let text = if json { write_graph_json(&g) } else { write_dimacs(&g) };
    emit(a.out.as_deref(), text.trim_end())?;
    eprintln!("{} vertices, {} edges", g.n(), g.edge_count());
    Ok(0)
}

fn find(a: &FindArgs) -> Result<u8, String> {
    let g = load_graph(&a.graph)?;
    let tree = a.tree.resolve()?.tree()?;
    let opts = SearchOptions { budget: a.budget, symmetry_breaking: a.symmetry, threads: a.threads.max(1) };
    match find_path_induced(&g, &tree, a.anchor, &opts).map_err(|e| e.to_string())? {
        SearchOutcome::Found(e) => {
            emit(a.out.as_deref(), &Certificate::from_embedding(&e).to_json())?;
            Ok(0)
        }
        SearchOutcome::NotFound => {
            out!("none");
            Ok(if a.expect == Some(Expect::Witness) { EXIT_FAILED } else { 0 })
        }
        SearchOutcome::Unknown => {
            eprintln!("search budget exhausted");
            Ok(EXIT_BUDGET)
        }
    }
}

fn dichotomy(a: &DichotomyArgs) -> Result<u8, String> {
    if !(1..=MAX_T).contains(&a.t) {
        return Err(format!("--t must lie in 1..={MAX_T}"));
    }
    let g = load_graph(&a.graph)?;
    let source = a.tree.resolve()?;
    let (d, k) = match &source {
        TreeSource::Spider(d, k) => (*d, *k),
        TreeSource::Tree(t) => {
            let cover = spider_cover(t).map_err(|e| e.to_string())?;
            (cover.d, cover.k)
        }
    };
    if k > MAX_K {
        return Err(format!("spider depth {k} exceeds {MAX_K}"));
    }
    let bound = bounds(d, k, a.t).map_err(|e| e.to_string())?.global_bound();
    eprintln!("B(t={}, d={d}, k={k}) = {bound}", a.t);
    let result = match &source {
        TreeSource::Spider(d, k) => spider_dichotomy(&g, *d, *k, a.t),
        TreeSource::Tree(t) => tree_dichotomy(&g, t, a.t),
    }
    .map_err(|e| e.to_string())?;
    match &result.outcome {
        Outcome::Embedding(e) => eprintln!("embedding, root at {}", e.root_image().unwrap_or_default()),
        Outcome::Coloring { coloring, .. } => eprintln!("coloring, {} colors used", coloring.distinct_colors()),
    }
    emit(a.out.as_deref(), &Certificate::from_dichotomy(&result).to_json())?;
    Ok(0)
}

fn verify_cmd(a: &VerifyArgs) -> Result<u8, String> {
    let g = load_graph(&a.graph)?;
    let cert = Certificate::from_json(&read(&a.cert)?).map_err(|e| format!("{}: {e}", a.cert.display()))?;
    match verify(&g, &cert) {
        Verdict::Valid => {
            out!("valid");
            Ok(0)
        }
        Verdict::Invalid(problems) => {
            out!("invalid");
            for p in problems {
                eprintln!("  {p}");
            }
            Ok(EXIT_FAILED)
        }
    }
}

fn oracle(a: &OracleArgs) -> Result<u8, String> {
    let g = load_graph(&a.graph)?;
    match a.query {
        OracleQuery::Chi => out!("{}", chromatic_number_exact(&g).map_err(|e| e.to_string())?.0),
        OracleQuery::Omega => out!("{}", clique_number_exact(&g).map_err(|e| e.to_string())?),
        OracleQuery::Embed => {
            let tree = a.tree.resolve()?.tree()?;
            match brute_force_path_induced(&g, &tree, a.anchor) {
                Some(e) => out!("{}", Certificate::from_embedding(&e).to_json()),
                None => out!("none"),
            }
        }
    }
    Ok(0)
}

fn refine(a: &RefineArgs) -> Result<u8, String> {
    let g = load_graph(&a.graph)?;
    let cert = Certificate::from_json(&read(&a.cert)?).map_err(|e| format!("{}: {e}", a.cert.display()))?;
    let phi = cert.embedding().map_err(|e| format!("{}: {e}", a.cert.display()))?;
    let goals: Goals = a.goals.parse().map_err(|e: pathcert::Error| e.to_string())?;
    match refine_embedding(&g, &phi, a.d, goals).map_err(|e| e.to_string())? {
        RefineOutcome::Refined(e) => {
            emit(a.out.as_deref(), &Certificate::from_embedding(&e).to_json())?;
            Ok(0)
        }
        RefineOutcome::InsufficientBranching => {
            out!("none");
            Ok(EXIT_FAILED)
        }
        RefineOutcome::Exhausted => {
            eprintln!("refinement budget exhausted");
            Ok(EXIT_BUDGET)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Find(a) => find(a),
        Command::Dichotomy(a) => dichotomy(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Oracle(a) => oracle(a),
        Command::Refine(a) => refine(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
