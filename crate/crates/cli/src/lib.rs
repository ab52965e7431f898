//! `sumtree` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! error, 3 a resource limit was exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sumtree::construct::{
    build_padded_with_budget, build_with_budget, stats_only, Alpha, CatalogEntry, PairIndex,
    DEFAULT_VERTEX_BUDGET,
};
use sumtree::sumcolor::{enumerate_minimal, solve, solve_brute, Tabulation};
use sumtree::treebank::{self, coloring_sum, is_proper, random_tree, tree_stats, Format};
use sumtree::verify::{
    sequence_csv, sequence_report, tree_strength_bound, verify_all, verify_bounds_random, Status,
};
use sumtree::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "sumtree", version, about = "Minimum-sum colorings of trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

impl From<TreeFormat> for Format {
    fn from(f: TreeFormat) -> Self {
        match f {
            TreeFormat::Json => Format::Json,
            TreeFormat::Dot => Format::Dot,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build T(i,j) with its canonical coloring.
    Gen {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        /// Print sizes from the recurrences instead of the tree.
        #[arg(long)]
        stats_only: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: TreeFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        vertex_budget: u64,
    },
    /// Build T(i,1) padded with t extra copies of T(i-1,1); t goes to stderr.
    #[command(name = "gen-cor2")]
    GenCor2 {
        #[arg(long)]
        i: u32,
        /// Exact rational P/Q strictly between 0 and 1/2.
        #[arg(long)]
        alpha: Alpha,
        #[arg(long, value_enum, default_value = "json")]
        format: TreeFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        vertex_budget: u64,
    },
    /// Chromatic sum, strength and minimal-coloring count of a tree file.
    Solve {
        file: PathBuf,
        /// Use the exhaustive solver (small trees only).
        #[arg(long)]
        brute: bool,
        /// Also report the least sum with the root forced to this color.
        #[arg(long, value_name = "C")]
        forced_root: Option<u64>,
        /// Also list up to LIMIT minimal colorings.
        #[arg(long, value_name = "LIMIT")]
        enumerate: Option<usize>,
    },
    /// Check every pair with i + j <= S.
    Verify {
        #[arg(long = "max-sum")]
        max_sum: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        vertex_budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Strength / max degree of the padded trees for i = 2..=imax.
    Sequence {
        #[arg(long)]
        alpha: Alpha,
        #[arg(long)]
        imax: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        vertex_budget: u64,
    },
    /// Random trees: N vertices each, or with --check sizes uniform in 1..=N.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check the strength bound (and the exhaustive oracle for n <= 10).
        #[arg(long)]
        check: bool,
    },
}

/// Failure that maps to a nonzero exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_resource() {
                EXIT_RESOURCE
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, bytes).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => out
            .write_all(bytes)
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn with_newline(mut bytes: Vec<u8>) -> Vec<u8> {
    if bytes.last() != Some(&b'\n') {
        bytes.push(b'\n');
    }
    bytes
}

#[derive(Serialize)]
struct StatsOutput {
    pair: PairIndex,
    #[serde(flatten)]
    entry: CatalogEntry,
}

#[derive(Serialize)]
struct InputColoring {
    proper: bool,
    sum: u64,
    minimal: bool,
}

#[derive(Serialize)]
struct ForcedRoot {
    color: u64,
    min_sum: u64,
}

#[derive(Serialize)]
struct SolveOutput {
    solver: &'static str,
    n: usize,
    sigma: u64,
    strength: u64,
    count: u64,
    count_saturated: bool,
    max_degree: usize,
    strength_bound: Option<u64>,
    witness: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input_coloring: Option<InputColoring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    forced_root: Option<ForcedRoot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_colorings: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncated: Option<bool>,
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Gen {
            i,
            j,
            stats_only: true,
            out: path,
            ..
        } => {
            let entry = stats_only(i, j)?;
            let json = serde_json::to_vec(&StatsOutput {
                pair: PairIndex::new(i, j)?,
                entry,
            })
            .expect("plain struct serializes");
            emit(out, path.as_ref(), &with_newline(json))?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            i,
            j,
            format,
            out: path,
            vertex_budget,
            ..
        } => {
            let (tree, f) = build_with_budget(i, j, vertex_budget)?;
            let bytes = treebank::serialize(&tree, Some(&f), format.into())?;
            emit(out, path.as_ref(), &with_newline(bytes))?;
            Ok(EXIT_OK)
        }
        Command::GenCor2 {
            i,
            alpha,
            format,
            out: path,
            vertex_budget,
        } => {
            let padded = build_padded_with_budget(i, alpha, vertex_budget)?;
            let bytes = treebank::serialize(&padded.tree, Some(&padded.coloring), format.into())?;
            emit(out, path.as_ref(), &with_newline(bytes))?;
            let _ = writeln!(err, "t = {}", padded.extra_copies);
            Ok(EXIT_OK)
        }
        Command::Solve {
            file,
            brute,
            forced_root,
            enumerate,
        } => solve_file(&file, brute, forced_root, enumerate, out),
        Command::Verify {
            max_sum,
            jobs,
            vertex_budget,
            format,
        } => {
            let reports = verify_all(max_sum, jobs, vertex_budget)?;
            let (mut pass, mut fail, mut skip) = (0, 0, 0);
            let mut text = String::new();
            for r in &reports {
                match r.status {
                    Status::Pass => pass += 1,
                    Status::Fail => fail += 1,
                    Status::Skipped => skip += 1,
                }
                match format {
                    ReportFormat::Json => {
                        text.push_str(&r.to_json());
                        text.push('\n');
                    }
                    ReportFormat::Text => text.push_str(&verdict_line(r)),
                }
            }
            emit(out, None, text.as_bytes())?;
            let _ = writeln!(err, "{pass} passed, {fail} failed, {skip} skipped");
            Ok(if fail > 0 { EXIT_CHECK_FAILED } else { EXIT_OK })
        }
        Command::Sequence {
            alpha,
            imax,
            format,
            vertex_budget,
        } => {
            let rows = sequence_report(alpha, imax, vertex_budget)?;
            for r in rows.iter().filter(|r| r.skipped) {
                let _ = writeln!(err, "skipped i = {}: needs {} vertices", r.i, r.n);
            }
            let body = match format {
                TableFormat::Csv => sequence_csv(&rows).into_bytes(),
                TableFormat::Json => {
                    with_newline(serde_json::to_vec(&rows).expect("rows serialize"))
                }
            };
            emit(out, None, &body)?;
            let failed: Vec<u32> = rows.iter().filter(|r| !r.pass).map(|r| r.i).collect();
            if failed.is_empty() {
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(err, "strength or degree mismatch at i = {failed:?}");
                Ok(EXIT_CHECK_FAILED)
            }
        }
        Command::Random {
            n,
            count,
            seed,
            check: true,
        } => {
            let summary = verify_bounds_random(count, n, seed)?;
            emit(
                out,
                None,
                &with_newline(serde_json::to_vec(&summary).expect("summary serializes")),
            )?;
            let _ = writeln!(
                err,
                "{} trees, {} bound violations, {} oracle mismatches",
                summary.trees,
                summary.violations.len(),
                summary.oracle_mismatches.len()
            );
            Ok(if summary.ok() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Random { n, count, seed, .. } => {
            let mut body = Vec::new();
            for k in 0..count {
                let tree = random_tree(n, seed.wrapping_add(k as u64))?;
                body.extend(treebank::serialize(&tree, None, Format::Json)?);
                body.push(b'\n');
            }
            emit(out, None, &body)?;
            Ok(EXIT_OK)
        }
    }
}

fn verdict_line(r: &sumtree::verify::VerdictReport) -> String {
    match r.status {
        Status::Pass => format!("PASS {} n={}\n", r.pair, r.n),
        Status::Skipped => format!(
            "SKIP {} n={} {}\n",
            r.pair,
            r.n,
            r.skip_reason.as_deref().unwrap_or("")
        ),
        Status::Fail => {
            let failed: Vec<String> = r
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: got {}, expected {}", c.name, c.actual, c.expected))
                .collect();
            format!("FAIL {} n={} {}\n", r.pair, r.n, failed.join("; "))
        }
    }
}

fn solve_file(
    file: &PathBuf,
    brute: bool,
    forced_root: Option<u64>,
    enumerate: Option<usize>,
    out: &mut dyn Write,
) -> Outcome {
    let bytes =
        fs::read(file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let (tree, given) = treebank::parse(&bytes)?;
    let report = if brute {
        solve_brute(&tree)?
    } else {
        solve(&tree)
    };
    let stats = tree_stats(&tree);

    let input_coloring = match given {
        Some(c) => {
            let proper = is_proper(&tree, &c)?;
            let sum = coloring_sum(&c);
            Some(InputColoring {
                proper,
                sum,
                minimal: proper && sum == report.sigma,
            })
        }
        None => None,
    };
    let forced_root = match forced_root {
        Some(0) => return Err(usage("--forced-root must be at least 1")),
        Some(c) => Some(ForcedRoot {
            color: c,
            min_sum: Tabulation::new(&tree)
                .forced_root(c)
                .expect("uncapped boxes are always feasible"),
        }),
        None => None,
    };
    let (minimal_colorings, truncated) = match enumerate {
        Some(limit) => {
            let e = enumerate_minimal(&tree, limit);
            (
                Some(e.colorings.into_iter().map(|c| c.into_inner()).collect()),
                Some(e.truncated),
            )
        }
        None => (None, None),
    };
    let output = SolveOutput {
        solver: if brute { "brute" } else { "dp" },
        n: tree.len(),
        sigma: report.sigma,
        strength: report.strength,
        count: report.count.value,
        count_saturated: report.count.saturated,
        max_degree: stats.max_degree,
        strength_bound: (tree.len() >= 2).then(|| tree_strength_bound(stats.max_degree as u64)),
        witness: report.witness.into_inner(),
        input_coloring,
        forced_root,
        minimal_colorings,
        truncated,
    };
    emit(
        out,
        None,
        &with_newline(serde_json::to_vec(&output).expect("output serializes")),
    )?;
    Ok(EXIT_OK)
}
