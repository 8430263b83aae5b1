//! Command-line front end: `report`, `polygon`, `scan` and `verify`.

mod polygon;
mod report;
mod scan;
mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

pub use polygon::{polygon_dump, PhiSpec, PolygonDump, StageDump};
pub use report::{report_document, PrimeBlock, ReportDocument};
pub use scan::{scan_rows, ScanRow};
pub use verify::{run_suite, SuiteOptions, SuiteResult};

use crate::arith::Trinomial;

pub const SCHEMA_VERSION: &str = "1.0.0";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REDUCIBLE: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "trinomial-index", version, about = "Field index of x^9 + a x^2 + b")]
pub struct Cli {
    /// Worker threads (output order does not depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Pair {
    #[arg(short = 'a', allow_hyphen_values = true)]
    pub a: BigInt,
    #[arg(short = 'b', allow_hyphen_values = true)]
    pub b: BigInt,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index, splitting types and table rows for one pair.
    Report {
        #[command(flatten)]
        pair: Pair,
    },
    /// Newton polygons and residual polynomials at one prime.
    Polygon {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_parser = ["2", "3", "5", "7"])]
        prime: String,
        /// `x`, `x-<c>`, `x+<c>` or `auto`.
        #[arg(long, default_value = "auto")]
        phi: String,
    },
    /// One record per irreducible pair of a rectangle.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        a_min: i64,
        #[arg(long, allow_hyphen_values = true)]
        a_max: i64,
        #[arg(long, allow_hyphen_values = true)]
        b_min: i64,
        #[arg(long, allow_hyphen_values = true)]
        b_max: i64,
        /// Keep only pairs with i(K) > 1.
        #[arg(long)]
        only_nontrivial: bool,
    },
    /// Runs the verification suite.
    Verify {
        /// Golden cases only.
        #[arg(long)]
        quick: bool,
        /// Side of the grid square checked.
        #[arg(long, default_value_t = 200)]
        grid: i64,
        /// Treat a table row (e.g. `nu2.3`) as absent.
        #[arg(long, hide = true)]
        disable_row: Option<String>,
    },
}

fn trinomial(pair: &Pair, err: &mut dyn Write) -> Result<Trinomial, i32> {
    Trinomial::new(pair.a.clone(), pair.b.clone()).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match &cli.command {
        Command::Report { pair } => match trinomial(pair, err) {
            Ok(t) => report::run(&t, cli.format, out, err),
            Err(code) => code,
        },
        Command::Polygon { pair, prime, phi } => match trinomial(pair, err) {
            Ok(t) => polygon::run(&t, prime.parse().unwrap(), phi, cli.format, out, err),
            Err(code) => code,
        },
        Command::Scan { a_min, a_max, b_min, b_max, only_nontrivial } => {
            let ranges = (*a_min..=*a_max, *b_min..=*b_max);
            let (code, buf, ebuf) = in_pool(cli.jobs, || {
                let (mut buf, mut ebuf) = (Vec::new(), Vec::new());
                let code = scan::run(ranges, *only_nontrivial, cli.format, &mut buf, &mut ebuf);
                (code, buf, ebuf)
            });
            let _ = out.write_all(&buf);
            let _ = err.write_all(&ebuf);
            code
        }
        Command::Verify { quick, grid, disable_row } => {
            let mask = match disable_row.as_deref().map(parse_row).transpose() {
                Ok(m) => m,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    return EXIT_USAGE;
                }
            };
            let opts = SuiteOptions { quick: *quick, grid: *grid, mask };
            let (code, buf) = in_pool(cli.jobs, || {
                let mut buf = Vec::new();
                let code = verify::run(&opts, cli.format, &mut buf);
                (code, buf)
            });
            let _ = out.write_all(&buf);
            code
        }
    }
}

fn parse_row(s: &str) -> Result<crate::index::TableRow, String> {
    use crate::index::TableRow;
    let bad = || format!("unknown table row `{s}`");
    let (table, row) = s.split_once('.').ok_or_else(bad)?;
    let row: u8 = row.parse().map_err(|_| bad())?;
    match (table, row) {
        ("nu2", 1..=9) => Ok(TableRow::Nu2(row)),
        ("nu3", 1..=4) => Ok(TableRow::Nu3(row)),
        _ => Err(bad()),
    }
}
