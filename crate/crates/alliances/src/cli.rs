//! Command-line front end. Every subcommand prints deterministic,
//! diff-friendly output: alliances as comma-separated label lists in
//! lexicographic order, one per line.
//!
//! Exit codes: 0 success (a missing extension is still success, printed as
//! `NONE`), 2 usage error, 3 input format error, 4 scan cap exceeded.

use std::fmt::Display;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::brute::{self, AllianceKind, BruteError, EnumerateOptions};
use crate::families::{self, Family, FamilySpec};
use crate::graph::{parse_graph, Graph, VertexSet};
use crate::reduction;
use crate::tree::{self, ExtensionInstance};

#[derive(Parser)]
#[command(
    name = "alliances",
    about = "Enumerate, count, check and extend minimal defensive alliances in graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// defensive alliances
    Da,
    /// locally minimal defensive alliances
    Lmda,
    /// globally minimal defensive alliances
    Gmda,
}

impl From<KindArg> for AllianceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Da => AllianceKind::Defensive,
            KindArg::Lmda => AllianceKind::LocallyMinimal,
            KindArg::Gmda => AllianceKind::GloballyMinimal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    /// full subset scan
    Brute,
    /// polynomial-delay tree enumerator (gmda on trees only)
    Tree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Diamond,
    Spider,
    Caterpillar,
    Path,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Diamond => Family::Diamond,
            FamilyArg::Spider => Family::Spider,
            FamilyArg::Caterpillar => Family::Caterpillar,
            FamilyArg::Path => Family::Path,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a vertex set: defensive / locally minimal / globally minimal.
    Check {
        /// Edge-list file, or `-` for stdin.
        graph: String,
        /// Comma-separated vertex labels.
        #[arg(long)]
        set: String,
    },
    /// List all alliances of the requested kind, one per line.
    Enumerate {
        graph: String,
        #[arg(long)]
        kind: KindArg,
        #[arg(long, default_value = "brute")]
        algorithm: AlgorithmArg,
        /// Also emit the (vacuously defensive) empty set for --kind da.
        #[arg(long)]
        include_empty: bool,
        /// Raise the subset-scan cap (default 30).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Count the alliances of the requested kind.
    Count {
        graph: String,
        #[arg(long)]
        kind: KindArg,
        #[arg(long, default_value = "brute")]
        algorithm: AlgorithmArg,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Find a globally minimal alliance through --forced avoiding --forbidden.
    Extend {
        graph: String,
        #[arg(long)]
        forced: Option<String>,
        #[arg(long)]
        forbidden: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Emit a family graph as an edge list, or a formula-vs-measured table.
    Generate {
        #[arg(long)]
        family: FamilyArg,
        /// n for diamond/path, k for spider/caterpillar.
        #[arg(long)]
        param: usize,
        /// Print TSV rows (param, formula, measured) up to --param.
        #[arg(long)]
        table: bool,
        /// Which count the table reports; defaults to gmda for
        /// diamond/spider and lmda for caterpillar/path.
        #[arg(long)]
        kind: Option<KindArg>,
    },
    /// Compile a monotone cubic 3-CNF into an extension instance.
    Reduce {
        /// DIMACS-style file with positive literals only, or `-` for stdin.
        cnf: String,
    },
    /// Run the tree enumerator and report its delay counters as JSON.
    DelayStats { graph: String },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn brute_failure(err: BruteError) -> Failure {
    let code = match err {
        BruteError::CapExceeded { .. }
        | BruteError::CapExceededOnTree { .. }
        | BruteError::ExtensionCapExceeded { .. } => 4,
        BruteError::ForcedForbiddenOverlap => 2,
    };
    fail(code, err)
}

fn read_input(path: &str) -> Result<String, Failure> {
    let content = if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map(|_| buf)
    } else {
        std::fs::read_to_string(path)
    };
    content.map_err(|e| fail(3, format!("cannot read {path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    parse_graph(&text).map_err(|e| fail(3, format!("{path}: {e}")))
}

fn parse_set(g: &Graph, spec: &str) -> Result<VertexSet, Failure> {
    let labels: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    VertexSet::from_labels(g, &labels).map_err(|e| fail(3, e))
}

fn enumerate_options(cap: Option<usize>) -> EnumerateOptions {
    let mut opts = EnumerateOptions::default();
    if let Some(cap) = cap {
        if cap > opts.cap {
            eprintln!("warning: subset-scan cap raised to {cap}; expect on the order of 2^{cap} work");
        }
        opts.cap = cap;
    }
    opts
}

fn out_err(e: std::io::Error) -> Failure {
    fail(1, format!("write failed: {e}"))
}

/// Parses `args` (including the program name) and runs one subcommand,
/// writing its output to `out`. Returns the process exit code.
pub fn run<I>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Check { graph, set } => {
            let g = load_graph(&graph)?;
            let a = parse_set(&g, &set)?;
            let report = crate::alliance::classify(&g, &a);
            let mut line = format!(
                "defensive={} locally_minimal={} globally_minimal={}",
                report.is_defensive, report.is_locally_minimal, report.is_globally_minimal
            );
            if let Some(v) = report.witness_violator {
                line.push_str(&format!(" violator={}", g.label(v)));
            }
            if let Some(sub) = &report.witness_suballiance {
                line.push_str(&format!(" suballiance={}", sub.to_canonical_string(&g)));
            }
            writeln!(out, "{line}").map_err(out_err)
        }
        Command::Enumerate {
            graph,
            kind,
            algorithm,
            include_empty,
            cap,
        } => {
            let g = load_graph(&graph)?;
            match algorithm {
                AlgorithmArg::Brute => {
                    let mut opts = enumerate_options(cap);
                    opts.include_empty = include_empty;
                    let stream =
                        brute::enumerate_with(&g, kind.into(), opts).map_err(brute_failure)?;
                    for set in stream {
                        writeln!(out, "{}", set.to_canonical_string(&g)).map_err(out_err)?;
                    }
                    Ok(())
                }
                AlgorithmArg::Tree => {
                    let stream = tree_enumerator(&g, kind)?;
                    for set in stream {
                        writeln!(out, "{}", set.to_canonical_string(&g)).map_err(out_err)?;
                    }
                    Ok(())
                }
            }
        }
        Command::Count {
            graph,
            kind,
            algorithm,
            cap,
        } => {
            let g = load_graph(&graph)?;
            let total = match algorithm {
                AlgorithmArg::Brute => {
                    brute::count_with(&g, kind.into(), enumerate_options(cap))
                        .map_err(brute_failure)?
                }
                AlgorithmArg::Tree => {
                    let mut stream = tree_enumerator(&g, kind)?;
                    let mut total = 0u64;
                    while stream.next().is_some() {
                        total += 1;
                    }
                    total
                }
            };
            writeln!(out, "{total}").map_err(out_err)
        }
        Command::Extend {
            graph,
            forced,
            forbidden,
            cap,
        } => {
            let g = load_graph(&graph)?;
            let forced = parse_set(&g, forced.as_deref().unwrap_or(""))?;
            let forbidden = parse_set(&g, forbidden.as_deref().unwrap_or(""))?;
            if !forced.is_disjoint(&forbidden) {
                return Err(fail(2, "--forced and --forbidden must be disjoint"));
            }
            let witness = if g.is_tree() {
                let inst = ExtensionInstance::new(g.clone(), forced, forbidden);
                tree::extend_gmda(&inst).map_err(|e| fail(2, e))?
            } else {
                let cap = cap.unwrap_or(brute::DEFAULT_SUBSET_CAP);
                brute::brute_extension_with_cap(&g, &forced, &forbidden, cap)
                    .map_err(brute_failure)?
            };
            match witness {
                Some(set) => writeln!(out, "{}", set.to_canonical_string(&g)).map_err(out_err),
                None => writeln!(out, "NONE").map_err(out_err),
            }
        }
        Command::Generate {
            family,
            param,
            table,
            kind,
        } => {
            let family: Family = family.into();
            if !table {
                let g = generate_graph(family, param)?;
                write!(out, "{}", g.to_edge_list()).map_err(out_err)
            } else {
                generate_table(family, param, kind, out)
            }
        }
        Command::Reduce { cnf } => {
            let text = read_input(&cnf)?;
            let phi = reduction::parse_cnf(&text).map_err(|e| fail(3, format!("{cnf}: {e}")))?;
            let inst = reduction::build_extension_instance(&phi);
            write!(out, "{}", inst.graph.to_edge_list()).map_err(out_err)?;
            for label in inst.forced.labels(&inst.graph) {
                writeln!(out, "U {label}").map_err(out_err)?;
            }
            Ok(())
        }
        Command::DelayStats { graph } => {
            let g = load_graph(&graph)?;
            let mut stream = tree::enumerate_gmda(&g).map_err(|e| fail(2, e))?;
            for _ in stream.by_ref() {}
            writeln!(out, "{}", stream.stats().to_json()).map_err(out_err)
        }
    }
}

fn tree_enumerator(g: &Graph, kind: KindArg) -> Result<tree::TreeEnumeration, Failure> {
    if kind != KindArg::Gmda {
        return Err(fail(
            2,
            "--algorithm tree only enumerates globally minimal alliances (--kind gmda)",
        ));
    }
    tree::enumerate_gmda(g).map_err(|e| fail(2, e))
}

fn generate_graph(family: Family, param: usize) -> Result<Graph, Failure> {
    families::generate(FamilySpec { family, parameter: param }).map_err(|e| fail(2, e))
}

fn generate_table(
    family: Family,
    param: usize,
    kind: Option<KindArg>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let kind = kind.unwrap_or(match family {
        Family::Diamond | Family::Spider => KindArg::Gmda,
        Family::Caterpillar | Family::Path => KindArg::Lmda,
    });
    let start = match (family, kind) {
        (Family::Diamond, KindArg::Gmda) => 4,
        (Family::Spider, KindArg::Gmda) => 2,
        (Family::Caterpillar, KindArg::Lmda) => 2,
        (Family::Path, _) => 1,
        _ => {
            return Err(fail(
                2,
                format!("no {} formula for family {}", kind_name(kind), family.name()),
            ))
        }
    };
    if kind == KindArg::Da {
        return Err(fail(2, "--table reports lmda or gmda counts"));
    }
    writeln!(out, "# {}\tparam\tformula\tmeasured", family.name()).map_err(out_err)?;
    for p in start..=param {
        let formula = match (family, kind) {
            (Family::Diamond, KindArg::Gmda) => families::diamond_gmda_lower(p),
            (Family::Spider, KindArg::Gmda) => families::spider_gmda_count(p),
            (Family::Caterpillar, KindArg::Lmda) => families::caterpillar_lmda_lower(p),
            (Family::Path, KindArg::Lmda) => families::path_lmda_count(p),
            (Family::Path, KindArg::Gmda) => families::path_gmda_count(p),
            _ => unreachable!("rejected above"),
        }
        .map_err(|e| fail(2, e))?;
        let g = generate_graph(family, p)?;
        let measured = match (kind, g.is_tree()) {
            (KindArg::Gmda, true) => Some(tree::count_gmda(&g).expect("family graph is a tree")),
            _ if g.n() <= brute::DEFAULT_SUBSET_CAP => {
                Some(brute::count(&g, kind.into()).expect("order checked against cap"))
            }
            _ => None,
        };
        match measured {
            Some(m) => writeln!(out, "{p}\t{formula}\t{m}").map_err(out_err)?,
            None => writeln!(out, "{p}\t{formula}\t-").map_err(out_err)?,
        }
    }
    Ok(())
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Da => "da",
        KindArg::Lmda => "lmda",
        KindArg::Gmda => "gmda",
    }
}
