//! Command-line front end: subcommands for the two verification suites and
//! the quadratic-point table generator, report emission, and the exit-code
//! contract (0 all pass, 1 any check failed, 2 operational error).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::nf::set_embedding_precision;
use crate::pipelines::{
    export_table, generate_table, load_jmap, run_x0_37, run_x1_13, CheckStatus,
    ExportFormat, JMapData, Report, SuiteConfig,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_OPERATIONAL: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "modcurve",
    version,
    about = "Exact-arithmetic verification of two bielliptic modular curves \
             and their quadratic points"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the genus-2 curve over the totally real sextic field: model,
    /// even model, Jacobian torsion, and the quadratic-point census
    #[command(name = "x13-verify")]
    X13Verify(VerifyArgs),
    /// Verify the genus-2 curve over Q: working model, quotient map, even
    /// model, and the quadratic-point table
    #[command(name = "x37-verify")]
    X37Verify(X37VerifyArgs),
    /// Generate the quadratic-point table from multiples of the generator
    #[command(name = "x37-table")]
    X37Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Embedding precision in bits for square-root reconstruction in the
    /// sextic field
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
    /// Seed for randomized polynomial factorization; fixed seed gives
    /// bit-reproducible runs
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Run only these check ids (comma-separated); everything else is skipped
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Skip these check ids (comma-separated)
    #[arg(long, value_delimiter = ',')]
    pub skip: Vec<String>,
    /// Write the machine-readable JSON report to this path
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct X37VerifyArgs {
    #[command(flatten)]
    pub verify: VerifyArgs,
    /// j-map data file; enables the table-curves check
    #[arg(long)]
    pub jmap: Option<PathBuf>,
    /// Largest generator multiple scanned by the table checks
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(i64).range(1..))]
    pub max_k: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest generator multiple scanned
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(i64).range(1..))]
    pub max_k: i64,
    /// Output format; csv requires --out
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    pub format: TableFormat,
    /// Output path; json without --out prints to standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// j-map data file; fills the j and curve columns
    #[arg(long)]
    pub jmap: Option<PathBuf>,
}

/// Parse arguments; usage problems surface as a clap error (exit 2 from
/// `Cli::parse`).
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Execute a parsed command and return the process exit code.
pub fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::X13Verify(args) => run_verify(&args, None, None, run_x1_13),
        Command::X37Verify(args) => run_verify(
            &args.verify,
            args.jmap.as_deref(),
            Some(args.max_k),
            run_x0_37,
        ),
        Command::X37Table(args) => run_table(&args),
    }
}

/// Read a j-map file. With `validate` the table oracle runs at load and any
/// mismatch is an operational error; without it the file is only parsed, so
/// the x37-verify table-curves check can report a mismatch as a check
/// failure (exit 1) instead.
fn load_optional_jmap(path: Option<&Path>, validate: bool) -> Result<Option<JMapData>, u8> {
    let Some(p) = path else { return Ok(None) };
    let operational = |e: &dyn std::fmt::Display| {
        eprintln!("error: j-map file {}: {e}", p.display());
        EXIT_OPERATIONAL
    };
    if validate {
        return match load_jmap(p) {
            Ok(data) => Ok(Some(data)),
            Err(e) => Err(operational(&e)),
        };
    }
    let text = std::fs::read_to_string(p).map_err(|e| operational(&e))?;
    let data = JMapData::parse(&text).map_err(|e| operational(&e))?;
    Ok(Some(data))
}

fn run_verify(
    args: &VerifyArgs,
    jmap: Option<&Path>,
    max_k: Option<i64>,
    suite: fn(&SuiteConfig) -> Report,
) -> u8 {
    set_embedding_precision(args.common.precision);
    let jmap = match load_optional_jmap(jmap, false) {
        Ok(j) => j,
        Err(code) => return code,
    };
    let config = SuiteConfig {
        only: if args.only.is_empty() {
            None
        } else {
            Some(args.only.iter().cloned().collect::<BTreeSet<_>>())
        },
        skip: args.skip.iter().cloned().collect(),
        rng_seed: args.common.rng_seed,
        jmap,
        max_k,
    };
    let report = suite(&config);
    print_summary(&report);
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&report)
            .expect("report serialization cannot fail");
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return EXIT_OPERATIONAL;
        }
    }
    if report.failed() > 0 {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

fn print_summary(report: &Report) {
    for c in &report.checks {
        let tag = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "skip",
        };
        println!("[{tag}] {} ({:.2}s)", c.check_id, c.seconds);
        if c.status == CheckStatus::Fail {
            println!("       expected: {}", c.expected);
            println!("       actual:   {}", c.actual);
        }
    }
    println!(
        "{}: {} passed, {} failed, {} skipped (seed {})",
        report.suite,
        report.passed(),
        report.failed(),
        report.skipped(),
        report.rng_seed
    );
}

fn run_table(args: &TableArgs) -> u8 {
    set_embedding_precision(args.common.precision);
    if args.format == TableFormat::Csv && args.out.is_none() {
        eprintln!("error: --format csv requires --out");
        return EXIT_OPERATIONAL;
    }
    let jmap = match load_optional_jmap(args.jmap.as_deref(), true) {
        Ok(j) => j,
        Err(code) => return code,
    };
    let records = match generate_table(args.max_k, jmap.as_ref()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: table generation failed: {e}");
            return EXIT_OPERATIONAL;
        }
    };
    let format = match args.format {
        TableFormat::Csv => ExportFormat::Csv,
        TableFormat::Json => ExportFormat::Json,
    };
    let text = export_table(&records, format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write table to {}: {e}", path.display());
                return EXIT_OPERATIONAL;
            }
        }
        None => print!("{text}"),
    }
    EXIT_OK
}
