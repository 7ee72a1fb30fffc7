//! `besg` — a desk workbench for faces-vs-vertices experiments in
//! multiplication-table grids.
//!
//! Subcommands mirror the library layers: `construct` emits the dense
//! configurations as triple CSV, `oracle` runs the exact brute-force
//! optimizers, `pipeline` hunts a structured subgrid inside a (possibly
//! subsampled) group table, `hunt` exposes the individual structure finders,
//! `verify` re-checks any emitted certificate from raw data alone, and
//! `table` tabulates the numbers against their reference curves.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a cap or budget was hit,
//! 4 nothing found / search failed, 5 certificate invalid.

use besg::constructions::{
    bes_elementary, bes_elementary_min_dimension, bes_interval, block_construction,
    block_face_count, bound_f, interval_construction, interval_face_count, IntervalPlan,
};
use besg::finders::{
    find_ap_grid, find_combinatorial_subspace, find_coset_grid, structure_pipeline,
    verify_certificate, Certificate, PipelineParams, VerifyData,
};
use besg::grids::{read_csv, write_csv, TripleSystem, DEFAULT_ISO_BUDGET};
use besg::group::{build_group, GroupSpec, GroupTable, DEFAULT_ORDER_CAP};
use besg::oracle::{f_prime_exact, g_prime_exact, max_faces, min_span, OracleResult, SearchBudget};
use besg::{Error, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

const EXIT_CAPPED: u8 = 3;
const EXIT_NOT_FOUND: u8 = 4;
const EXIT_BAD_CERT: u8 = 5;

#[derive(Parser)]
#[command(
    name = "besg",
    version,
    about = "Dense configurations, exact oracles, and structured-subgrid hunts in group tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a known-good configuration and write it as triple CSV.
    Construct(ConstructArgs),
    /// Exact optimization: most faces for a vertex budget, least span for a face target.
    Oracle(OracleArgs),
    /// Hunt a structured subgrid in a group table subset; emit a certificate.
    Pipeline(PipelineArgs),
    /// Re-check a certificate file against the data it makes claims about.
    Verify(VerifyArgs),
    /// Tabulate construction and oracle values against reference curves.
    Table(TableArgs),
    /// Run one structure finder directly on raw cells or words.
    Hunt(HuntArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Pipeline(args) => cmd_pipeline(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Hunt(args) => cmd_hunt(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

/// Stable mapping from library errors to the documented exit codes.
fn exit_for(err: &Error) -> u8 {
    match err {
        Error::CapExceeded(_) | Error::BudgetExceeded(_) => EXIT_CAPPED,
        Error::NotFound(_) | Error::Infeasible(_) | Error::SearchFailed { .. } => EXIT_NOT_FOUND,
        _ => 2,
    }
}

/// Group-order cap for `--group` expressions; `BESG_MAX_ORDER` overrides.
fn order_cap() -> Result<u64> {
    match std::env::var("BESG_MAX_ORDER") {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::Parse(format!("BESG_MAX_ORDER must be an integer, found `{raw}`"))
        }),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn parse_group(expr: &str) -> Result<GroupTable> {
    build_group(&expr.parse::<GroupSpec>()?, order_cap()?)
}

fn with_path(path: &Path, e: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    ))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| with_path(path, e))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| with_path(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("in-memory serialization cannot fail")
}

// ---------------------------------------------------------------- construct

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Corner of the addition grid keeping the most popular labels.
    Interval {
        /// Vertex budget to split into rows, columns, and labels.
        #[arg(long)]
        v: u64,
        /// Side of the hosting addition grid (at least the corner side).
        #[arg(long)]
        k: usize,
        /// Write the CSV here; without it, CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union of aligned sub-blocks in an elementary abelian table.
    Block {
        /// Vertex budget.
        #[arg(long)]
        v: u64,
        /// Prime base of the hosting group.
        #[arg(long)]
        p: u64,
        /// Dimension of the hosting group Z_p^m.
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exactly t faces on at most t+3 vertices, in the addition grid.
    BesInterval {
        /// Face target.
        #[arg(long)]
        t: u64,
        /// Side of the hosting addition grid.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exactly t faces on O(√t) vertices, in an elementary abelian table.
    BesElementary {
        /// Face target.
        #[arg(long)]
        t: u64,
        /// Prime base of the hosting group.
        #[arg(long)]
        p: u64,
        /// Dimension of the hosting group; defaults to the least that fits.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn cmd_construct(args: ConstructArgs) -> Result<u8> {
    let (config, out) = match args.kind {
        ConstructKind::Interval { v, k, out } => (interval_construction(v, k)?, out),
        ConstructKind::Block { v, p, m, out } => (block_construction(v, p, m)?, out),
        ConstructKind::BesInterval { t, k, out } => (bes_interval(t, k)?, out),
        ConstructKind::BesElementary { t, p, m, out } => {
            let m = match m {
                Some(m) => m,
                None => bes_elementary_min_dimension(t, p)?,
            };
            (bes_elementary(t, p, m)?, out)
        }
    };
    let summary = format!("faces={} span={}", config.len(), config.span().total);
    let mut csv = Vec::new();
    write_csv(&config.to_triple_system(), &mut csv)
        .expect("writing to an in-memory buffer cannot fail");
    let csv = String::from_utf8(csv).expect("CSV output is ASCII");
    match out {
        Some(path) => {
            write_file(&path, &csv)?;
            println!("{summary}");
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

// ------------------------------------------------------------------- oracle

#[derive(Args)]
struct OracleArgs {
    /// Group expression (Z12, Z2^4, D5, S4, Q8, products with x) whose full
    /// multiplication grid is the search space.
    #[arg(long, conflicts_with = "csv")]
    group: Option<String>,
    /// With --group: restrict to the first K rows and columns. Alone: the
    /// plain integer addition grid of side K.
    #[arg(long, value_name = "K")]
    interval: Option<usize>,
    /// Load the grid from a triple CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Cap on the vertex budget accepted by the exact search.
    #[arg(long, default_value_t = SearchBudget::default().max_vertices)]
    max_vertices: usize,
    /// Cap on evaluated (row set, column set) pairs.
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    max_nodes: u64,
    /// Wall-clock safety valve in seconds.
    #[arg(long, default_value_t = 300)]
    time_cap_secs: u64,
    #[command(subcommand)]
    mode: OracleMode,
}

#[derive(Subcommand)]
enum OracleMode {
    /// Most faces any set of --v vertices spans.
    MaxFaces {
        #[arg(long)]
        v: usize,
    },
    /// Least vertex span holding --t faces.
    MinSpan {
        #[arg(long)]
        t: u64,
    },
}

fn load_oracle_grid(args: &OracleArgs) -> Result<TripleSystem> {
    match (&args.group, &args.csv, args.interval) {
        (Some(expr), None, interval) => {
            let table = parse_group(expr)?;
            let ts = TripleSystem::from_group(&table);
            match interval {
                None => Ok(ts),
                Some(k) => {
                    if k < 1 || k > table.order() {
                        return Err(Error::OutOfRange(format!(
                            "--interval must lie in 1..={}, got {k}",
                            table.order()
                        )));
                    }
                    let keep: BTreeSet<usize> = (0..k).collect();
                    ts.subgrid(&keep, &keep)
                }
            }
        }
        (None, Some(path), None) => read_csv(&read_file(path)?),
        (None, Some(_), Some(_)) => Err(Error::InvalidSpec(
            "--interval cannot restrict a --csv grid".into(),
        )),
        (None, None, Some(k)) => TripleSystem::interval_grid(k),
        (None, None, None) => Err(Error::InvalidSpec(
            "pass a grid source: --group [--interval], --interval alone, or --csv".into(),
        )),
        // clap's conflicts_with already rejects --group with --csv.
        (Some(_), Some(_), _) => unreachable!(),
    }
}

/// The wire format for oracle results: triples as `[row, col, label]`.
#[derive(Serialize)]
struct OracleOut<'a> {
    optimum: u64,
    exhaustive: bool,
    witness: &'a [(usize, usize, usize)],
}

fn print_oracle(result: &OracleResult) -> u8 {
    let out = OracleOut {
        optimum: result.optimum,
        exhaustive: result.exhaustive,
        witness: result.witness.triples(),
    };
    println!("{}", to_json(&out));
    if result.exhaustive {
        0
    } else {
        EXIT_CAPPED
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<u8> {
    let ts = load_oracle_grid(&args)?;
    let budget = SearchBudget {
        max_vertices: args.max_vertices,
        max_nodes: args.max_nodes,
        time_cap: Duration::from_secs(args.time_cap_secs),
    };
    let result = match args.mode {
        OracleMode::MaxFaces { v } => max_faces(&ts, v, &budget),
        OracleMode::MinSpan { t } => min_span(&ts, t, &budget)?,
    };
    Ok(print_oracle(&result))
}

// ----------------------------------------------------------------- pipeline

#[derive(Args)]
struct PipelineArgs {
    /// Group expression hosting the search.
    #[arg(long)]
    group: String,
    /// Use the whole multiplication table as the input subset.
    #[arg(long, conflicts_with = "density")]
    full: bool,
    /// Keep each triple independently with this probability (a decimal in
    /// (0,1] or a fraction like 3/4).
    #[arg(long)]
    density: Option<String>,
    /// Seed for the subset draw.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Interval length the certificate must reach.
    #[arg(long)]
    k: usize,
    /// Dimension target for the elementary branch.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Smallest cyclic exponent worth taking the cyclic branch for.
    #[arg(long)]
    t_min: Option<u64>,
    /// Smallest torsion rank worth taking the elementary branch for.
    #[arg(long)]
    m_min: Option<u32>,
    /// Node budget for the final isomorphism search.
    #[arg(long, default_value_t = DEFAULT_ISO_BUDGET)]
    iso_budget: u64,
    /// Write the certificate JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also save the sampled subset as triple CSV.
    #[arg(long)]
    save_input: Option<PathBuf>,
}

/// Decimal or `num/den` fraction in (0, 1].
fn parse_density(raw: &str) -> Result<f64> {
    let bad = |detail: &str| Error::Parse(format!("density `{raw}`: {detail}"));
    let value = if let Some((num, den)) = raw.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
        let den: u64 = den.trim().parse().map_err(|_| bad("bad denominator"))?;
        if den == 0 {
            return Err(bad("zero denominator"));
        }
        num as f64 / den as f64
    } else {
        raw.trim().parse().map_err(|_| bad("not a number"))?
    };
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(Error::OutOfRange(format!(
            "density must lie in (0,1], got {raw}"
        )))
    }
}

fn cmd_pipeline(args: PipelineArgs) -> Result<u8> {
    let table = parse_group(&args.group)?;
    let full = TripleSystem::from_group(&table);
    let a = if args.full {
        full
    } else {
        let raw = args.density.as_deref().ok_or_else(|| {
            Error::InvalidSpec("pass --full or --density to choose the input subset".into())
        })?;
        let eps = parse_density(raw)?;
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let kept: Vec<_> = full
            .triples()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(eps))
            .collect();
        TripleSystem::from_triples(
            full.rows().to_vec(),
            full.cols().to_vec(),
            full.labels().to_vec(),
            kept,
        )?
    };
    if let Some(path) = &args.save_input {
        let mut csv = Vec::new();
        write_csv(&a, &mut csv).expect("writing to an in-memory buffer cannot fail");
        write_file(path, &String::from_utf8(csv).expect("CSV output is ASCII"))?;
    }
    let params = PipelineParams {
        t_min: args.t_min,
        m_min: args.m_min,
        iso_budget: args.iso_budget,
    };
    let cert = structure_pipeline(&table, &a, args.k, args.m, &params)?;
    emit_certificate(&Certificate::Pipeline(cert), args.out.as_deref())?;
    Ok(0)
}

fn emit_certificate(cert: &Certificate, out: Option<&Path>) -> Result<()> {
    let json = to_json(cert);
    match out {
        Some(path) => write_file(path, &format!("{json}\n")),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

// ------------------------------------------------------------------- verify

#[derive(Args)]
struct VerifyArgs {
    /// Certificate JSON file, as emitted by `pipeline` or `hunt`.
    cert: PathBuf,
    /// The data the certificate makes claims about: a triple CSV, or for
    /// combinatorial-subspace certificates one word per line.
    data: PathBuf,
}

/// One word per line: either a string of decimal digits (alphabets up to
/// ten) or comma-separated symbol numbers. `#` starts a comment line.
fn parse_words(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut words = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word: Vec<u32> = if line.contains(',') {
            line.split(',')
                .map(|f| {
                    f.trim().parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad symbol `{f}`", lineno + 1))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            line.chars()
                .map(|ch| {
                    ch.to_digit(10).ok_or_else(|| {
                        Error::Parse(format!("line {}: bad digit `{ch}`", lineno + 1))
                    })
                })
                .collect::<Result<_>>()?
        };
        words.push(word);
    }
    Ok(words)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    let cert: Certificate = serde_json::from_str(&read_file(&args.cert)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", args.cert.display())))?;
    let text = read_file(&args.data)?;
    let data = match &cert {
        Certificate::Subspace(sc) => VerifyData::Words {
            alphabet: sc.alphabet,
            words: parse_words(&text)?,
        },
        _ => VerifyData::Grid(read_csv(&text)?),
    };
    match verify_certificate(&cert, &data) {
        Ok(()) => {
            println!("ok");
            Ok(0)
        }
        Err(violation) => {
            eprintln!("invalid: {violation}");
            Ok(EXIT_BAD_CERT)
        }
    }
}

// -------------------------------------------------------------------- table

#[derive(Args)]
struct TableArgs {
    #[command(subcommand)]
    mode: TableMode,
}

#[derive(Subcommand)]
enum TableMode {
    /// Addition-grid face maxima per vertex budget, against v²/12.
    #[command(name = "f-bounds")]
    FBounds {
        /// Vertex budget or inclusive range, e.g. 6 or 3..9.
        #[arg(long)]
        v: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Elementary-abelian face maxima per vertex budget, against v²/49.
    #[command(name = "g-bounds")]
    GBounds {
        /// Vertex budget or inclusive range.
        #[arg(long)]
        v: String,
        /// Prime base of the hosting group.
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Dimension the oracle works in.
        #[arg(long, default_value_t = 3)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least span reaching t faces, against the t+3 and 7√t curves.
    #[command(name = "F-bounds")]
    CapBounds {
        /// Face target or inclusive range, e.g. 100 or 3..10.
        #[arg(long)]
        t: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// `lo..hi` (inclusive) or a single value.
fn parse_range(raw: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse(format!("range `{raw}`: expected N or LO..HI"));
    let (lo, hi) = match raw.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let x: u64 = raw.trim().parse().map_err(|_| bad())?;
            (x, x)
        }
    };
    if lo > hi {
        return Err(Error::OutOfRange(format!("range `{raw}` is empty")));
    }
    Ok((lo, hi))
}

fn emit_table(rows: String, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_file(path, &rows),
        None => {
            print!("{rows}");
            Ok(())
        }
    }
}

fn cmd_table(args: TableArgs) -> Result<u8> {
    let budget = SearchBudget::default();
    match args.mode {
        TableMode::FBounds { v, out } => {
            let (lo, hi) = parse_range(&v)?;
            let mut rows = String::from("v,construction,oracle,ref_num,ref_den\n");
            for v in lo..=hi {
                let plan = IntervalPlan::new(v)?;
                let construction = interval_face_count(plan.r, plan.s)?;
                let oracle = if (v as usize) <= budget.max_vertices {
                    f_prime_exact(v as usize, &budget)?.optimum.to_string()
                } else {
                    String::new()
                };
                rows.push_str(&format!("{v},{construction},{oracle},{},12\n", v * v));
            }
            emit_table(rows, out.as_deref())?;
        }
        TableMode::GBounds { v, p, m, out } => {
            let (lo, hi) = parse_range(&v)?;
            let mut rows = String::from("v,construction,oracle,ref_num,ref_den\n");
            for v in lo..=hi {
                let construction = block_face_count(v, p)?;
                let oracle = if (v as usize) <= budget.max_vertices {
                    g_prime_exact(v as usize, p, m, &budget)?
                        .result
                        .optimum
                        .to_string()
                } else {
                    String::new()
                };
                rows.push_str(&format!("{v},{construction},{oracle},{},49\n", v * v));
            }
            emit_table(rows, out.as_deref())?;
        }
        TableMode::CapBounds { t, out } => {
            let (lo, hi) = parse_range(&t)?;
            let mut rows = String::from("t,bound_F,t_plus_3,seven_sqrt_t\n");
            for t in lo..=hi {
                let bound = bound_f(t)?;
                rows.push_str(&format!("{t},{bound},{},{}\n", t + 3, (49 * t).isqrt()));
            }
            emit_table(rows, out.as_deref())?;
        }
    }
    Ok(0)
}

// --------------------------------------------------------------------- hunt

#[derive(Args)]
struct HuntArgs {
    #[command(subcommand)]
    kind: HuntKind,
}

#[derive(Subcommand)]
enum HuntKind {
    /// Arithmetic-progression grid inside the cells of a triple CSV over Z_n.
    ApGrid {
        /// Triple CSV whose (row, col) cells are searched.
        #[arg(long)]
        csv: PathBuf,
        /// Modulus; defaults to the larger of the CSV's row/col universes.
        #[arg(long)]
        n: Option<usize>,
        /// Progression length.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coset grid (one subspace, both sides) inside cells indexed by Z_p^n.
    CosetGrid {
        #[arg(long)]
        csv: PathBuf,
        /// Prime base.
        #[arg(long)]
        p: u64,
        /// Ambient dimension; indices are base-p digit vectors.
        #[arg(long)]
        n: usize,
        /// Subspace dimension to find.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Combinatorial subspace inside a word list (one word per line).
    Subspace {
        #[arg(long)]
        words: PathBuf,
        /// Number of symbols.
        #[arg(long)]
        alphabet: u32,
        /// Number of wildcard sets.
        #[arg(long)]
        k: usize,
        /// Word length; defaults to the first word's length.
        #[arg(long)]
        len: Option<usize>,
        /// Override the work-estimate cap.
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn csv_cells(path: &Path) -> Result<(TripleSystem, Vec<(usize, usize)>)> {
    let ts = read_csv(&read_file(path)?)?;
    let cells: Vec<(usize, usize)> = ts.triples().iter().map(|&(r, c, _)| (r, c)).collect();
    Ok((ts, cells))
}

fn cmd_hunt(args: HuntArgs) -> Result<u8> {
    match args.kind {
        HuntKind::ApGrid { csv, n, k, out } => {
            let (ts, cells) = csv_cells(&csv)?;
            let n = n.unwrap_or_else(|| ts.rows().len().max(ts.cols().len()));
            match find_ap_grid(&cells, n, k)? {
                Some(cert) => {
                    emit_certificate(&Certificate::ApGrid(cert), out.as_deref())?;
                    Ok(0)
                }
                None => {
                    eprintln!("no progression grid of length {k} exists in these cells");
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        HuntKind::CosetGrid { csv, p, n, k, out } => {
            let (_, cells) = csv_cells(&csv)?;
            match find_coset_grid(&cells, p, n, k)? {
                Some(cert) => {
                    emit_certificate(&Certificate::CosetGrid(cert), out.as_deref())?;
                    Ok(0)
                }
                None => {
                    eprintln!("no dimension-{k} coset grid exists in these cells");
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        HuntKind::Subspace {
            words,
            alphabet,
            k,
            len,
            cap,
            out,
        } => {
            let list = parse_words(&read_file(&words)?)?;
            let len = match (len, list.first()) {
                (Some(len), _) => len,
                (None, Some(first)) => first.len(),
                (None, None) => {
                    return Err(Error::InvalidSpec(
                        "an empty word list needs an explicit --len".into(),
                    ))
                }
            };
            match find_combinatorial_subspace(&list, alphabet, len, k, cap)? {
                Some(cert) => {
                    emit_certificate(&Certificate::Subspace(cert), out.as_deref())?;
                    Ok(0)
                }
                None => {
                    eprintln!("no {k}-dimensional combinatorial subspace lies in these words");
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_parsing() {
        assert_eq!(parse_density("0.5").unwrap(), 0.5);
        assert_eq!(parse_density("1").unwrap(), 1.0);
        assert_eq!(parse_density("3/4").unwrap(), 0.75);
        assert!(parse_density("0").is_err());
        assert!(parse_density("1.5").is_err());
        assert!(parse_density("2/0").is_err());
        assert!(parse_density("x").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert_eq!(parse_range("3..9").unwrap(), (3, 9));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_words("012\n210\n").unwrap(), vec![
            vec![0, 1, 2],
            vec![2, 1, 0]
        ]);
        assert_eq!(parse_words("# comment\n10, 2, 3\n").unwrap(), vec![vec![
            10, 2, 3
        ]]);
        assert!(parse_words("01x\n").is_err());
    }
}
