//! `matchkit` command-line harness.
//!
//! Exit codes: 0 when the decided property holds (or all suites pass),
//! 2 when a counterexample or failing verdict was found, 1 on errors.
//! Reports are byte-identical for a fixed configuration and seed; pass
//! `--timings` to include wall-clock seconds.

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use matchkit::abelian::{GroupSpec, Subset};
use matchkit::error::Error;
use matchkit::ffield::{FieldElement, FieldSpec, Subspace};
use matchkit::linear::{
    construct_matched_basis, dimension_criterion, linear_acyclic_tiny, matched_sufficient,
    primitive_dimension_search, strong_matching_exists, weak_local_match, MatchedSufficiency,
    OrderedBasis,
};
use matchkit::matching::{
    acyclic_matchings, enumerate_matchings, has_matching, polyadic_matching_check, AcyclicMode,
    MatchingFn,
};
use matchkit::poly::{build_group_matrix, determinant};
use matchkit::report::{emit_search_reports, emit_suite_reports, emit_table, Format};
use matchkit::search::{run_search, strategy, SearchOptions, SearchReport};
use matchkit::suites::{suite, suites, SuiteConfig, SuiteReport};
use matchkit::table::reproduce_table;

const THREADS_ENV: &str = "MATCHKIT_THREADS";

#[derive(Parser)]
#[command(
    name = "matchkit",
    version,
    about = "Matchings in finite abelian groups and their linear analogues over finite fields"
)]
struct Cli {
    /// Output format: human, json, or tsv
    #[arg(long, global = true)]
    format: Option<String>,
    /// Seed for randomized suites
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: MATCHKIT_THREADS, else 1)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Optional key=value configuration file supplying defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall-clock seconds in reports (off keeps output
    /// byte-identical across runs)
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matchings between subsets of Z/nZ
    #[command(subcommand)]
    Group(GroupCmd),
    /// Subspace matchings in finite field extensions
    #[command(subcommand)]
    Linear(LinearCmd),
    /// Matchings under the 2n-ary sum operation
    #[command(subcommand)]
    Ngroup(NgroupCmd),
    /// Named verification suites
    #[command(subcommand)]
    Props(PropsCmd),
}

#[derive(Args)]
struct SearchArgs {
    /// Single modulus n of Z/nZ
    #[arg(long, conflicts_with = "range")]
    modulus: Option<u64>,
    /// Inclusive modulus range, e.g. 2..12
    #[arg(long)]
    range: Option<String>,
    /// Cap the subset size of enumerated pairs
    #[arg(long)]
    max_size: Option<usize>,
    /// Compare multiplicity functions over all bijections (the literal
    /// multiset recipe) instead of over matchings only
    #[arg(long)]
    compare_bijections: bool,
    /// Restrict sources to min(A) = 0; sound for "holds" verdicts, and a
    /// found counterexample triggers an unpruned rerun
    #[arg(long)]
    symmetry_pruning: bool,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Decide matching (or acyclic-matching) existence for one pair
    Matching {
        #[arg(long)]
        modulus: u64,
        /// Source subset, e.g. "{0,4,6}"
        #[arg(short = 'A', long = "set-a", value_name = "SET")]
        a: String,
        /// Target subset, e.g. "{3,5,6}"
        #[arg(short = 'B', long = "set-b", value_name = "SET")]
        b: String,
        /// List every matching
        #[arg(long)]
        enumerate: bool,
        /// Decide acyclic-matching existence instead
        #[arg(long)]
        acyclic: bool,
    },
    /// Exhaustive acyclic-matching property search over pairs with 0 ∉ B
    AcyclicSearch(SearchArgs),
    /// Exhaustive weak acyclic property search over pairs with
    /// A ∩ (A+B) = ∅
    WeakAcyclicSearch(SearchArgs),
    /// Symbolic matching matrix and its exact determinant for one pair
    MatrixDet {
        #[arg(long)]
        modulus: u64,
        #[arg(short = 'A', long = "set-a", value_name = "SET")]
        a: String,
        #[arg(short = 'B', long = "set-b", value_name = "SET")]
        b: String,
    },
    /// Reference verdict table for prime moduli up to 19
    Table {
        /// Re-discover witnesses by full search instead of verifying the
        /// bundled pairs (very slow beyond p = 5)
        #[arg(long)]
        full_search: bool,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic of the prime field
    #[arg(long)]
    p: u64,
    /// Extension degree
    #[arg(long)]
    m: usize,
    /// Modulus coefficient vector [c0,...,cm] (default: pinned
    /// lexicographically-least irreducible)
    #[arg(long)]
    modulus_poly: Option<String>,
}

#[derive(Subcommand)]
enum LinearCmd {
    /// Dimension criterion, matched-basis construction, and sufficient
    /// conditions for one subspace pair
    Matched {
        #[command(flatten)]
        field: FieldArgs,
        /// Subspace A as a JSON row list, e.g. [[0,1,0,0],[0,0,1,0]]
        #[arg(short = 'A', long = "space-a", value_name = "ROWS")]
        a: String,
        #[arg(short = 'B', long = "space-b", value_name = "ROWS")]
        b: String,
        /// Ordered basis of A (default: canonical echelon basis)
        #[arg(long, value_name = "ROWS")]
        basis_a: Option<String>,
    },
    /// Strong-matching existence (AB ∩ A = {0})
    Strong {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'A', long = "space-a", value_name = "ROWS")]
        a: String,
        #[arg(short = 'B', long = "space-b", value_name = "ROWS")]
        b: String,
    },
    /// Exhaustive tiny-scale acyclicity scan with the matrix experiment
    AcyclicTiny {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'A', long = "space-a", value_name = "ROWS")]
        a: String,
        #[arg(short = 'B', long = "space-b", value_name = "ROWS")]
        b: String,
    },
    /// Primitive-subspace dimension experiment
    Thm42 {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Local matching construction through a proper subfield
    WeakLocal {
        #[command(flatten)]
        field: FieldArgs,
        /// Subfield degree d (the subfield F_{p^d}, d | m, d < m)
        #[arg(long)]
        subfield: usize,
        #[arg(short = 'A', long = "space-a", value_name = "ROWS")]
        a: String,
        #[arg(short = 'B', long = "space-b", value_name = "ROWS")]
        b: String,
    },
}

#[derive(Subcommand)]
enum NgroupCmd {
    /// Check one bijection against the 2n-ary matching condition
    Check {
        #[arg(long)]
        modulus: u64,
        /// Arity parameter n (the operation is the 2n-ary sum)
        #[arg(long)]
        arity: u32,
        #[arg(short = 'A', long = "set-a", value_name = "SET")]
        a: String,
        #[arg(short = 'B', long = "set-b", value_name = "SET")]
        b: String,
        /// Images of the sorted source elements, e.g. "2,1"
        #[arg(long, value_name = "LIST")]
        map: String,
    },
}

#[derive(Subcommand)]
enum PropsCmd {
    /// Run one suite or all of them
    Run {
        /// Suite name (default: all)
        #[arg(long)]
        suite: Option<String>,
    },
    /// List registered suites
    List,
}

struct Globals {
    format: Format,
    seed: u64,
    threads: usize,
    timings: bool,
    config: HashMap<String, String>,
}

fn main() {
    std::process::exit(match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    });
}

fn run() -> Result<i32, Error> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return Ok(0);
            }
            eprint!("{e}");
            return Ok(1);
        }
    };

    let config = match &cli.config {
        None => HashMap::new(),
        Some(path) => parse_config(path)?,
    };
    let format = match cli
        .format
        .as_deref()
        .or(config.get("format").map(String::as_str))
    {
        None => Format::Human,
        Some(s) => Format::from_str(s)?,
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => match config.get("seed") {
            Some(s) => s
                .parse()
                .map_err(|_| Error::argument(format!("bad seed `{s}` in config")))?,
            None => matchkit::DEFAULT_SEED,
        },
    };
    let threads = resolve_threads(cli.threads, &config)?;
    let globals = Globals {
        format,
        seed,
        threads,
        timings: cli.timings || config_flag(&config, "timings"),
        config,
    };

    match cli.command {
        Command::Group(cmd) => group(cmd, &globals),
        Command::Linear(cmd) => linear(cmd, &globals),
        Command::Ngroup(cmd) => ngroup(cmd, &globals),
        Command::Props(cmd) => props(cmd, &globals),
    }
}

fn parse_config(path: &PathBuf) -> Result<HashMap<String, String>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::argument(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::argument(format!("config line {} is not key=value", lineno + 1))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn config_flag(config: &HashMap<String, String>, key: &str) -> bool {
    matches!(
        config.get(key).map(String::as_str),
        Some("true" | "1" | "yes")
    )
}

fn resolve_threads(cli: Option<usize>, config: &HashMap<String, String>) -> Result<usize, Error> {
    if let Some(t) = cli {
        return Ok(t.max(1));
    }
    if let Some(t) = config.get("threads") {
        return t
            .parse::<usize>()
            .map(|t| t.max(1))
            .map_err(|_| Error::argument(format!("bad threads `{t}` in config")));
    }
    if let Ok(t) = std::env::var(THREADS_ENV) {
        return t
            .parse::<usize>()
            .map(|t| t.max(1))
            .map_err(|_| Error::argument(format!("bad {THREADS_ENV} value `{t}`")));
    }
    Ok(1)
}

fn search_options(args: &SearchArgs, globals: &Globals) -> SearchOptions {
    SearchOptions {
        max_size: args
            .max_size
            .or_else(|| globals.config.get("max-size").and_then(|s| s.parse().ok())),
        mode: if args.compare_bijections || config_flag(&globals.config, "compare-bijections") {
            AcyclicMode::Bijections
        } else {
            AcyclicMode::Matchings
        },
        symmetry_pruning: args.symmetry_pruning || config_flag(&globals.config, "symmetry-pruning"),
        threads: globals.threads,
        record_elapsed: globals.timings,
    }
}

fn parse_moduli(args: &SearchArgs, config: &HashMap<String, String>) -> Result<Vec<u64>, Error> {
    let range_text = args.range.clone().or_else(|| config.get("range").cloned());
    let modulus = args
        .modulus
        .or_else(|| config.get("modulus").and_then(|s| s.parse().ok()));
    match (modulus, range_text) {
        (Some(n), None) => Ok(vec![n]),
        (None, Some(r)) => {
            let (lo, hi) = r
                .split_once("..")
                .ok_or_else(|| Error::argument(format!("range `{r}` must look like a..b")))?;
            let lo: u64 = lo
                .trim()
                .parse()
                .map_err(|_| Error::argument(format!("bad range start in `{r}`")))?;
            let hi: u64 = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| Error::argument(format!("bad range end in `{r}`")))?;
            if lo > hi {
                return Err(Error::argument(format!("empty range `{r}`")));
            }
            Ok((lo..=hi).collect())
        }
        (Some(_), Some(_)) => Err(Error::argument(
            "pass either --modulus or --range, not both",
        )),
        (None, None) => Err(Error::argument("one of --modulus or --range is required")),
    }
}

fn group(cmd: GroupCmd, globals: &Globals) -> Result<i32, Error> {
    match cmd {
        GroupCmd::Matching {
            modulus,
            a,
            b,
            enumerate,
            acyclic,
        } => {
            let spec = GroupSpec::cyclic(modulus)?;
            let a = Subset::parse(&spec, &a)?;
            let b = Subset::parse(&spec, &b)?;
            let exists = has_matching(&spec, &a, &b)?;
            let listed: Option<Vec<MatchingFn>> = if enumerate || acyclic {
                Some(enumerate_matchings(&spec, &a, &b)?.collect())
            } else {
                None
            };
            let acyclic_list = if acyclic {
                Some(acyclic_matchings(&spec, &a, &b)?)
            } else {
                None
            };
            let verdict = match &acyclic_list {
                Some(list) => !list.is_empty(),
                None => exists,
            };
            let property = if acyclic {
                "acyclic-matching-existence"
            } else {
                "matching-existence"
            };
            let render = |phi: &MatchingFn| -> Vec<String> {
                (0..phi.source().len())
                    .map(|i| phi.image(i).to_string())
                    .collect()
            };
            match globals.format {
                Format::Json => {
                    let mut obj = json!({
                        "modulus": modulus,
                        "property": property,
                        "A": a.to_string(),
                        "B": b.to_string(),
                        "verdict": verdict,
                    });
                    if let Some(list) = &listed {
                        obj["matching_count"] = json!(list.len());
                        if enumerate {
                            obj["matchings"] = json!(list.iter().map(render).collect::<Vec<_>>());
                        }
                    }
                    if let Some(list) = &acyclic_list {
                        obj["acyclic_count"] = json!(list.len());
                        if enumerate {
                            obj["acyclic_matchings"] =
                                json!(list.iter().map(render).collect::<Vec<_>>());
                        }
                    }
                    println!("{obj}");
                }
                Format::Tsv => {
                    println!("modulus\tproperty\tA\tB\tverdict");
                    println!("{modulus}\t{property}\t{a}\t{b}\t{verdict}");
                }
                Format::Human => {
                    println!(
                        "Z/{modulus}Z: {property} for A={a}, B={b}: {}",
                        if verdict { "yes" } else { "no" }
                    );
                    if let Some(list) = &listed {
                        println!("  matchings: {}", list.len());
                        if enumerate {
                            for phi in list {
                                let images: Vec<String> = a
                                    .iter()
                                    .zip(render(phi))
                                    .map(|(x, y)| format!("{x}->{y}"))
                                    .collect();
                                println!("    {}", images.join(" "));
                            }
                        }
                    }
                    if let Some(list) = &acyclic_list {
                        println!("  acyclic matchings: {}", list.len());
                    }
                }
            }
            Ok(if verdict { 0 } else { 2 })
        }
        GroupCmd::AcyclicSearch(args) => run_group_search("acyclic", &args, globals),
        GroupCmd::WeakAcyclicSearch(args) => run_group_search("weak-acyclic", &args, globals),
        GroupCmd::MatrixDet { modulus, a, b } => {
            let spec = GroupSpec::cyclic(modulus)?;
            let a = Subset::parse(&spec, &a)?;
            let b = Subset::parse(&spec, &b)?;
            let matrix = build_group_matrix(&spec, &a, &b)?;
            let (det, invertible) = determinant(&matrix)?;
            match globals.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "modulus": modulus,
                        "A": a.to_string(),
                        "B": b.to_string(),
                        "matrix": matrix.dump_json(),
                        "determinant": det.to_string(),
                        "invertible": invertible,
                    })
                ),
                Format::Tsv => {
                    println!("modulus\tA\tB\tdeterminant\tinvertible");
                    println!("{modulus}\t{a}\t{b}\t{det}\t{invertible}");
                }
                Format::Human => {
                    println!("matching matrix for A={a}, B={b} over Z/{modulus}Z:");
                    println!("  {}", matrix.dump_json());
                    println!("  det = {det}");
                    println!("  invertible: {invertible}");
                }
            }
            Ok(if invertible { 0 } else { 2 })
        }
        GroupCmd::Table { full_search } => {
            let opts = SearchOptions {
                threads: globals.threads,
                record_elapsed: globals.timings,
                ..SearchOptions::default()
            };
            let rows = reproduce_table(
                full_search || config_flag(&globals.config, "full-search"),
                &opts,
            )?;
            println!("{}", emit_table(&rows, globals.format));
            Ok(if rows.iter().all(|r| r.acyclic_property.is_some()) {
                0
            } else {
                2
            })
        }
    }
}

fn run_group_search(name: &str, args: &SearchArgs, globals: &Globals) -> Result<i32, Error> {
    let strat = strategy(name).expect("registered strategy");
    let opts = search_options(args, globals);
    let moduli = parse_moduli(args, &globals.config)?;
    let reports: Vec<SearchReport> = moduli
        .iter()
        .map(|&n| run_search(strat, n, &opts))
        .collect::<Result<_, _>>()?;
    println!("{}", emit_search_reports(&reports, globals.format));
    Ok(if reports.iter().all(SearchReport::holds) {
        0
    } else {
        2
    })
}

fn parse_field(args: &FieldArgs) -> Result<FieldSpec, Error> {
    match &args.modulus_poly {
        None => FieldSpec::with_default_modulus(args.p, args.m),
        Some(text) => {
            let coeffs: Vec<u64> = serde_json::from_str(text)
                .map_err(|e| Error::argument(format!("bad modulus polynomial: {e}")))?;
            FieldSpec::new(args.p, args.m, coeffs)
        }
    }
}

fn parse_subspace(field: &FieldSpec, text: &str) -> Result<Subspace, Error> {
    let rows: Vec<Vec<u64>> = serde_json::from_str(text)
        .map_err(|e| Error::argument(format!("bad subspace rows: {e}")))?;
    Subspace::from_rows(field.p(), field.m(), rows)
}

fn parse_vectors(field: &FieldSpec, text: &str) -> Result<Vec<FieldElement>, Error> {
    let rows: Vec<Vec<u64>> =
        serde_json::from_str(text).map_err(|e| Error::argument(format!("bad vector rows: {e}")))?;
    rows.iter().map(|r| field.element(r)).collect()
}

fn rows_json(s: &Subspace) -> serde_json::Value {
    json!(s.basis_rows())
}

fn linear(cmd: LinearCmd, globals: &Globals) -> Result<i32, Error> {
    match cmd {
        LinearCmd::Matched {
            field,
            a,
            b,
            basis_a,
        } => {
            let f = parse_field(&field)?;
            let a = parse_subspace(&f, &a)?;
            let b = parse_subspace(&f, &b)?;
            let basis = match basis_a {
                None => OrderedBasis::canonical(&f, &a)?,
                Some(text) => OrderedBasis::new(&f, parse_vectors(&f, &text)?)?,
            };
            let criterion = dimension_criterion(&f, &basis, &a, &b)?;
            let matched_basis = if criterion.holds {
                Some(construct_matched_basis(&f, &basis, &a, &b)?)
            } else {
                None
            };
            let sufficient = matched_sufficient(&f, &a, &b)?;
            let sufficient_label = match sufficient.verdict {
                MatchedSufficiency::ByDegreeBound => "by-degree-bound",
                MatchedSufficiency::ByPrimitivity => "by-primitivity",
                MatchedSufficiency::Unknown => "unknown",
            };
            match globals.format {
                Format::Json => {
                    let mut obj = json!({
                        "field": f,
                        "A": rows_json(&a),
                        "B": rows_json(&b),
                        "basis": basis.vectors().iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>(),
                        "matchable": criterion.holds,
                        "sufficient": sufficient_label,
                        "outside_hypothesis": sufficient.outside_hypothesis,
                    });
                    if let Some(j) = &criterion.violating {
                        obj["violating"] = json!(j);
                    }
                    if let Some(mb) = &matched_basis {
                        obj["matched_basis"] = json!(mb
                            .vectors()
                            .iter()
                            .map(|v| v.coeffs().to_vec())
                            .collect::<Vec<_>>());
                    }
                    println!("{obj}");
                }
                _ => {
                    println!(
                        "F_{}^{} (modulus {:?}): basis matchable: {}",
                        f.p(),
                        f.m(),
                        f.modulus(),
                        criterion.holds
                    );
                    if let Some(j) = &criterion.violating {
                        println!("  violating index set J = {j:?}");
                    }
                    if let Some(mb) = &matched_basis {
                        let rendered: Vec<String> =
                            mb.vectors().iter().map(|v| v.to_string()).collect();
                        println!("  matched basis of B: {}", rendered.join(", "));
                    }
                    println!(
                        "  sufficient condition: {sufficient_label}{}",
                        if sufficient.outside_hypothesis {
                            " (outside the stated hypothesis)"
                        } else {
                            ""
                        }
                    );
                }
            }
            Ok(if criterion.holds { 0 } else { 2 })
        }
        LinearCmd::Strong { field, a, b } => {
            let f = parse_field(&field)?;
            let a = parse_subspace(&f, &a)?;
            let b = parse_subspace(&f, &b)?;
            let strong = strong_matching_exists(&f, &a, &b)?;
            match globals.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "field": f,
                        "A": rows_json(&a),
                        "B": rows_json(&b),
                        "strong_matching": strong,
                    })
                ),
                _ => println!("strong matching exists: {strong}"),
            }
            Ok(if strong { 0 } else { 2 })
        }
        LinearCmd::AcyclicTiny { field, a, b } => {
            let f = parse_field(&field)?;
            let a = parse_subspace(&f, &a)?;
            let b = parse_subspace(&f, &b)?;
            let report = linear_acyclic_tiny(&f, &a, &b)?;
            let all_invertible = report.matrix_invertible.iter().all(|&x| x);
            match globals.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "field": f,
                        "A": rows_json(&a),
                        "B": rows_json(&b),
                        "isomorphisms": report.isomorphism_count,
                        "acyclic_count": report.acyclic.len(),
                        "matrix_invertible": report.matrix_invertible,
                        "asymmetric_pairs": report.asymmetric_pairs,
                        "experimental": true,
                    })
                ),
                _ => {
                    println!(
                        "isomorphisms: {}, acyclic: {}, matrices invertible: {:?}, asymmetric pairs: {} (experimental)",
                        report.isomorphism_count,
                        report.acyclic.len(),
                        report.matrix_invertible,
                        report.asymmetric_pairs
                    );
                }
            }
            Ok(if all_invertible { 0 } else { 2 })
        }
        LinearCmd::Thm42 { field } => {
            let f = parse_field(&field)?;
            let report = primitive_dimension_search(&f)?;
            match globals.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "field": f,
                        "m_KL": report.max_primitive_dim,
                        "n_KL": report.largest_proper_degree,
                        "equality": report.equality,
                        "subspaces_scanned": report.subspaces_scanned,
                        "experimental": true,
                    })
                ),
                _ => println!(
                    "m_KL = {}, n_KL = {}, equality with m - n_KL: {} ({} subspaces scanned; experimental)",
                    report.max_primitive_dim,
                    report.largest_proper_degree,
                    report.equality,
                    report.subspaces_scanned
                ),
            }
            Ok(if report.equality { 0 } else { 2 })
        }
        LinearCmd::WeakLocal {
            field,
            subfield,
            a,
            b,
        } => {
            let f = parse_field(&field)?;
            let a = parse_subspace(&f, &a)?;
            let b = parse_subspace(&f, &b)?;
            let h = f.subfield_fixed(subfield)?;
            let out = weak_local_match(&f, &a, &b, &h)?;
            match globals.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "field": f,
                        "A": rows_json(&a),
                        "B": rows_json(&b),
                        "subfield_degree": subfield,
                        "source": out.source.vectors().iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>(),
                        "target": out.target.vectors().iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>(),
                    })
                ),
                _ => {
                    let pairs: Vec<String> = out
                        .source
                        .vectors()
                        .iter()
                        .zip(out.target.vectors())
                        .map(|(x, y)| format!("{x}·{y}"))
                        .collect();
                    println!(
                        "locally matched pair through F_{}^{subfield}: products {} all avoid A",
                        f.p(),
                        pairs.join(", ")
                    );
                }
            }
            Ok(0)
        }
    }
}

fn ngroup(cmd: NgroupCmd, globals: &Globals) -> Result<i32, Error> {
    match cmd {
        NgroupCmd::Check {
            modulus,
            arity,
            a,
            b,
            map,
        } => {
            let spec = GroupSpec::cyclic(modulus)?;
            let a = Subset::parse(&spec, &a)?;
            let b = Subset::parse(&spec, &b)?;
            let images: Vec<u64> = map
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::argument(format!("bad map entry `{part}`")))
                })
                .collect::<Result<_, _>>()?;
            if images.len() != a.len() {
                return Err(Error::argument(format!(
                    "map lists {} images for {} source elements",
                    images.len(),
                    a.len()
                )));
            }
            let perm: Vec<usize> = images
                .iter()
                .map(|&r| {
                    let target = spec.element(&[r])?;
                    b.elements()
                        .binary_search(&target)
                        .map_err(|_| Error::argument(format!("image {r} is not in B")))
                })
                .collect::<Result<_, _>>()?;
            let phi = MatchingFn::new(a.clone(), b.clone(), perm)?;
            let verdict = polyadic_matching_check(&spec, &phi, arity)?;
            match globals.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "modulus": modulus,
                        "arity": arity,
                        "A": a.to_string(),
                        "B": b.to_string(),
                        "map": images,
                        "polyadic_matching": verdict,
                    })
                ),
                _ => println!(
                    "2·{arity}-ary matching condition for A={a}, B={b}: {}",
                    if verdict { "holds" } else { "violated" }
                ),
            }
            Ok(if verdict { 0 } else { 2 })
        }
    }
}

fn props(cmd: PropsCmd, globals: &Globals) -> Result<i32, Error> {
    match cmd {
        PropsCmd::List => {
            for s in suites() {
                println!(
                    "{:<28} {}{}",
                    s.name(),
                    s.description(),
                    if s.experimental() {
                        " [experimental]"
                    } else {
                        ""
                    }
                );
            }
            Ok(0)
        }
        PropsCmd::Run { suite: name } => {
            let cfg = SuiteConfig {
                seed: globals.seed,
                threads: globals.threads,
            };
            let selected: Vec<&dyn matchkit::suites::PropertySuite> = match name {
                None => suites().to_vec(),
                Some(n) => {
                    vec![suite(&n).ok_or_else(|| Error::argument(format!("unknown suite `{n}`")))?]
                }
            };
            let reports: Vec<SuiteReport> = selected
                .iter()
                .map(|s| s.run(&cfg))
                .collect::<Result<_, _>>()?;
            println!("{}", emit_suite_reports(&reports, globals.format));
            Ok(if reports.iter().all(|r| r.passed) {
                0
            } else {
                2
            })
        }
    }
}
