//! Command-line interface: censuses, table verification and the pipeline.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::curvecount::cache::CountCache;
use crate::curvecount::genus0::genus0_count_at;
use crate::curvecount::genus1::genus1_cycle_counts;
use crate::curvecount::hyperelliptic::hyperelliptic_cycle_counts;
use crate::curvecount::quartic::quartic_cycle_counts;
use crate::curvecount::{CountRecord, SpaceId, SpaceKind};
use crate::error::{Error, Result};
use crate::fixtures::fixtures;
use crate::gkpipeline::{matches_mbar4_target, run_and_extract, InputLedger, LedgerSource};
use crate::partition::Partition;
use crate::verify::{verify_tables, Budget, Which};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(name = "stable-euler", version, about = "Equivariant point counts and Euler characteristics of moduli of curves")]
pub struct Cli {
    /// Worker threads for the censuses (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory holding the persistent count cache.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore and do not write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Equivariant point count of one space over F_q, by cycle type.
    Count {
        /// M, H or Q.
        space: String,
        g: usize,
        n: usize,
        #[arg(long)]
        q: u64,
        /// Cycle type such as `2,1`, or `all`.
        #[arg(long, default_value = "all")]
        lambda: String,
    },
    /// Compare the censuses with the reference tables.
    VerifyTables {
        #[arg(default_value = "all")]
        which: String,
        #[arg(long, default_value = "fast")]
        budget: String,
    },
    /// Run the transform and print the compactified Euler characteristics.
    Pipeline {
        #[arg(long = "D", default_value_t = 6)]
        d: usize,
        #[arg(long, default_value = "fixtures")]
        ledger_source: String,
    },
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn open_cache(cli: &Cli) -> Result<CountCache> {
    match (&cli.cache_dir, cli.no_cache) {
        (Some(dir), false) => CountCache::open(dir),
        _ => Ok(CountCache::in_memory()),
    }
}

fn cycle_counts(space: SpaceId, q: u64, cache: &CountCache) -> Result<BTreeMap<Partition, BigRational>> {
    let n = space.n;
    match (space.kind, space.g) {
        (SpaceKind::M, 0) => Partition::all(n).into_iter().map(|l| Ok((l.clone(), genus0_count_at(&l, q)?))).collect(),
        (SpaceKind::M, 1) => genus1_cycle_counts(q, n, cache),
        (SpaceKind::H, g) => hyperelliptic_cycle_counts(g, n, q, cache),
        (SpaceKind::Q, _) => quartic_cycle_counts(n, q, cache),
        _ => Err(Error::Unsupported(format!(
            "no census for {} {} {}; supported: M 0 n, M 1 n, H 2|3 n, Q 3 n",
            space.kind, space.g, n
        ))),
    }
}

fn cmd_count(cli: &Cli, out: &mut dyn Write, space: &str, g: usize, n: usize, q: u64, lambda: &str) -> Result<i32> {
    let kind: SpaceKind = space.parse()?;
    let space = SpaceId::new(kind, g, n)?;
    let cache = open_cache(cli)?;
    let mut counts = cycle_counts(space, q, &cache)?;
    if lambda != "all" {
        let mu: Partition = lambda.parse()?;
        if mu.weight() != n {
            return Err(usage(format!("cycle type {mu} is not a partition of {n}")));
        }
        counts.retain(|l, _| *l == mu);
    }
    for (lambda, value) in counts {
        let rec = CountRecord { space, q, lambda, value };
        match cli.format {
            Format::Tsv => writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", kind, g, n, rec.lambda.to_key(), q, rec.value)?,
            Format::Pretty => writeln!(out, "{} {} {} {} q={}: {}", kind, g, n, rec.lambda, q, rec.value)?,
        }
    }
    cache.flush()?;
    Ok(EXIT_OK)
}

fn cmd_verify(cli: &Cli, out: &mut dyn Write, which: &str, budget: &str) -> Result<i32> {
    let which: Which = which.parse()?;
    let budget: Budget = budget.parse()?;
    let cache = open_cache(cli)?;
    let report = verify_tables(which, budget, fixtures()?, &cache)?;
    cache.flush()?;
    write!(out, "{}", report.matrix())?;
    for c in report.failures() {
        writeln!(out, "{c}")?;
    }
    let failed = report.failures().count();
    writeln!(out, "{} checks, {} failed", report.checks.len(), failed)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_pipeline(cli: &Cli, out: &mut dyn Write, d: usize, source: &str) -> Result<i32> {
    let source: LedgerSource = source.parse()?;
    let cache = open_cache(cli)?;
    let ledger = InputLedger::build(source, d, &cache)?;
    cache.flush()?;
    let report = run_and_extract(&ledger, d)?;
    match cli.format {
        Format::Tsv => write!(out, "{}", report.to_tsv())?,
        Format::Pretty => write!(out, "{}", report.to_pretty())?,
    }
    let mut status = EXIT_OK;
    for f in &report.findings {
        writeln!(out, "finding: {f}")?;
        status = EXIT_MISMATCH;
    }
    if d >= 6 {
        let ok = matches_mbar4_target(&report)?;
        writeln!(out, "genus 4 row {} the reference value", if ok { "matches" } else { "DIFFERS FROM" })?;
        if !ok {
            status = EXIT_MISMATCH;
        }
    }
    Ok(status)
}

/// Runs a parsed command, writing results to `out` and errors to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match &cli.command {
        Command::Count { space, g, n, q, lambda } => cmd_count(cli, out, space, *g, *n, *q, lambda),
        Command::VerifyTables { which, budget } => cmd_verify(cli, out, which, budget),
        Command::Pipeline { d, ledger_source } => cmd_pipeline(cli, out, *d, ledger_source),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Input(_) | Error::Unsupported(_) => EXIT_USAGE,
                _ => EXIT_MISMATCH,
            }
        }
    }
}

/// Parses `args` (program name first) and runs; clap usage errors exit 2.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            }
        }
    }
}
