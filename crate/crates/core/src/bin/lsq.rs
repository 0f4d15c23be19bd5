//! `lsq`: enumerate, classify and count Latin squares with conjugate
//! symmetry, export tables and run the verification suites.
//!
//! Exit codes: 0 success, 1 a verified claim failed, 2 usage error or
//! unsupported request, 3 runtime failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use lsq::catalog::{enumerate_catalog, CatalogFile};
use lsq::census::{Census, CensusOptions, CountKind, SymmetricMethod, Table, TableName};
use lsq::generate::{GenOptions, DEFAULT_SCREEN_DEPTH};
use lsq::verify::{run_all, run_suite, Suite, VerifyOptions};
use lsq::{EquivalenceRelation, PropertyFilter, Shape, Symmetry};

#[derive(Parser)]
#[command(name = "lsq", version, about = "Latin squares with conjugate symmetry")]
struct Cli {
    /// Worker threads (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Screening stages applied to partial squares before the parallel search.
    #[arg(long, global = true, default_value_t = DEFAULT_SCREEN_DEPTH)]
    screen_depth: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a catalog of class representatives.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        symmetry: Symmetry,
        #[arg(long = "shape")]
        shapes: Vec<Shape>,
        #[arg(long)]
        out: PathBuf,
        /// Write the representatives as plain squares instead of a catalog.
        #[arg(long)]
        raw: bool,
        /// Resume from and record progress in this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Merge a catalog's classes under a coarser relation.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        relation: EquivalenceRelation,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a census table.
    Table {
        #[arg(long)]
        name: TableName,
        #[arg(long)]
        max_order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Census method for the symmetric tables.
        #[arg(long)]
        method: Option<SymmetricMethod>,
    },
    /// Run verification suites (all when none is named).
    Verify {
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Largest order of the symmetric catalogs.
        #[arg(long)]
        symmetric_max: Option<usize>,
        /// Largest order of the semisymmetric catalogs.
        #[arg(long)]
        semisymmetric_max: Option<usize>,
        /// Largest order of the semisymmetric loop catalogs.
        #[arg(long)]
        loops_max: Option<usize>,
        /// Largest order of the totally symmetric catalogs.
        #[arg(long)]
        totally_symmetric_max: Option<usize>,
    },
    /// Print the class counts of one category.
    Count {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        symmetry: Symmetry,
        #[arg(long = "shape")]
        shapes: Vec<Shape>,
        #[arg(long)]
        method: Option<SymmetricMethod>,
    },
}

/// Failures that map to a distinct exit code.
enum Failure {
    Claim,
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<lsq::Error>() {
            Some(lsq::Error::Unsupported(_) | lsq::Error::Precondition(_)) => Failure::Usage(e),
            _ => Failure::Runtime(e),
        }
    }
}

impl From<lsq::Error> for Failure {
    fn from(e: lsq::Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let gen = GenOptions::default().with_jobs(cli.jobs).with_screen_depth(cli.screen_depth);
    let started = Instant::now();
    match cli.command {
        Command::Enumerate { order, symmetry, shapes, out, raw, checkpoint } => {
            let filter = PropertyFilter::new(symmetry, &shapes)?;
            let cat = enumerate_catalog(order, &filter, &gen, checkpoint.as_deref())?;
            let text = if raw {
                cat.records.iter().map(|r| r.representative.to_text()).collect::<Vec<_>>().join("\n")
            } else {
                cat.to_text()
            };
            std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            println!("{} {} classes, {} squares", cat.relation, cat.class_count(), cat.square_count());
        }
        Command::Classify { input, relation, out } => {
            let cat = CatalogFile::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let merged = cat.classify(relation, &gen)?;
            merged.write(&out).with_context(|| format!("writing {}", out.display()))?;
            println!("{} {} classes, {} squares", merged.relation, merged.class_count(), merged.square_count());
        }
        Command::Table { name, max_order, format, method } => {
            let mut census = Census::new(CensusOptions { gen, skip_order_two: false });
            census.method = method;
            let table = Table::build(name, max_order, &mut census)?;
            let text = match format {
                Format::Csv => table.to_csv(),
                Format::Json => format!("{:#}\n", table.to_json()),
            };
            std::io::stdout().write_all(text.as_bytes()).context("writing table")?;
        }
        Command::Verify { suite, format, symmetric_max, semisymmetric_max, loops_max, totally_symmetric_max } => {
            let d = VerifyOptions::default();
            let opts = VerifyOptions {
                gen,
                symmetric_max: symmetric_max.unwrap_or(d.symmetric_max),
                semisymmetric_max: semisymmetric_max.unwrap_or(d.semisymmetric_max),
                loops_max: loops_max.unwrap_or(d.loops_max),
                totally_symmetric_max: totally_symmetric_max.unwrap_or(d.totally_symmetric_max),
            };
            let report = match suite {
                Some(s) => run_suite(s, &opts),
                None => run_all(&opts),
            };
            match format {
                ReportFormat::Text => print!("{}", report.to_text()),
                ReportFormat::Json => println!("{:#}", report.to_json()),
            }
            if !report.passed() {
                if matches!(format, ReportFormat::Text) {
                    let mut failed = report.clone();
                    failed.checks.retain(|c| !c.passed());
                    eprintln!("{:#}", failed.to_json());
                }
                return Err(Failure::Claim);
            }
        }
        Command::Count { order, symmetry, shapes, method } => {
            let filter = PropertyFilter::new(symmetry, &shapes)?;
            let mut census = Census::new(CensusOptions { gen, skip_order_two: false });
            census.method = method;
            let row = census.derived(order, &filter)?;
            println!("{filter} n={order}");
            for k in CountKind::ALL {
                if let Some(v) = row.get(k) {
                    println!("{}={v}", k.as_str());
                }
            }
            if symmetry == Symmetry::Symmetric && shapes.is_empty() {
                let c = census.symmetric(order)?;
                println!("reduced={}", c.reduced);
                println!("loops={}", c.loop_classes());
            }
        }
    }
    info!("finished in {:?}", started.elapsed());
    Ok(())
}
