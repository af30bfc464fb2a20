use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mapcensus::cache::{CacheStatus, TableCache};
use mapcensus::records::{
    rooted_records, rooted_tag, row_vertices, sensed_records, SequenceRecord,
};
use mapcensus::recurrence::{regular_cell, FamilyId, FamilyKind, Surface};
use mapcensus::verify::{self, Suite, VerifyOptions};
use mapcensus::CensusError;

#[derive(Parser)]
#[command(
    name = "mapcensus",
    version,
    about = "Exact counts of regular maps on the sphere, torus, projective plane and Klein bottle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Sphere,
    Torus,
    Projective,
    Klein,
}

impl From<SurfaceArg> for Surface {
    fn from(s: SurfaceArg) -> Surface {
        match s {
            SurfaceArg::Sphere => Surface::Sphere,
            SurfaceArg::Torus => Surface::Torus,
            SurfaceArg::Projective => Surface::Projective,
            SurfaceArg::Klein => Surface::Klein,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Tables,
    Crosscheck,
    Oracle,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Crosscheck => Suite::Crosscheck,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rooted r-regular maps on a surface, one row per table index.
    Rooted {
        #[arg(long, value_enum)]
        surface: SurfaceArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        r: u32,
        /// Last row; for odd r row v counts maps with 2v vertices.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_v: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Reuse and store degree tables here.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Sensed r-regular maps on the torus.
    Sensed {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_v: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check the engine against the published tables, closed forms and brute force.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Largest dart count enumerated by the oracle.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(2..=64))]
        budget_darts: u32,
    },
    /// Build or refresh cached degree tables.
    Cache {
        /// Defaults to all four surfaces.
        #[arg(long, value_enum)]
        surface: Option<SurfaceArg>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_v: u64,
        #[arg(long)]
        cache_dir: PathBuf,
    },
}

/// Writes to stdout, treating a closed pipe as the reader being done.
fn write_out(text: &str) -> Result<(), CensusError> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CensusError::InvalidArgument(format!("writing output: {e}")))
        }
        _ => Ok(()),
    }
}

fn emit(records: &[SequenceRecord], format: Format) -> Result<(), CensusError> {
    let mut text = match format {
        Format::Csv => records.iter().map(|r| r.csv_line() + "\n").collect(),
        Format::Json => serde_json::to_string_pretty(records)
            .map_err(|e| CensusError::InvalidArgument(e.to_string()))?,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write_out(&text)
}

fn status_name(s: CacheStatus) -> &'static str {
    match s {
        CacheStatus::Hit => "hit",
        CacheStatus::Built => "built",
        CacheStatus::Extended => "extended",
    }
}

fn cached_rooted(
    dir: PathBuf,
    surface: Surface,
    r: usize,
    rows: u64,
) -> Result<Vec<SequenceRecord>, CensusError> {
    let cache = TableCache::new(dir);
    let family = FamilyId::new(surface, FamilyKind::Single, r)?;
    let n_max = r * row_vertices(r, rows) / 2;
    let (table, status) = cache.load_or_build(family, n_max)?;
    eprintln!(
        "cache {} {}",
        status_name(status),
        cache.path_for(family).display()
    );
    let tag = rooted_tag(surface, r);
    (1..=rows)
        .map(|row| {
            Ok(SequenceRecord::new(
                &tag,
                row,
                regular_cell(&table, row_vertices(r, row))?,
            ))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, CensusError> {
    match cli.command {
        Command::Rooted {
            surface,
            r,
            max_v,
            format,
            cache_dir,
        } => {
            let (surface, r) = (Surface::from(surface), r as usize);
            let records = match cache_dir {
                Some(dir) => cached_rooted(dir, surface, r, max_v)?,
                None => rooted_records(surface, r, max_v)?,
            };
            emit(&records, format)?;
        }
        Command::Sensed { r, max_v, format } => {
            emit(&sensed_records(r as usize, max_v)?, format)?;
        }
        Command::Verify {
            suite,
            budget_darts,
        } => {
            let options = VerifyOptions {
                budget_darts: budget_darts as usize,
            };
            let report = verify::run(suite.into(), options)?;
            let mut text: String = report
                .comparisons
                .iter()
                .map(|c| format!("{c}\n"))
                .collect();
            let failed = report.failures().count();
            text.push_str(&format!(
                "{} comparisons, {failed} failed\n",
                report.comparisons.len()
            ));
            write_out(&text)?;
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Cache {
            surface,
            r,
            max_v,
            cache_dir,
        } => {
            let cache = TableCache::new(cache_dir);
            let r = r as usize;
            let surfaces: Vec<Surface> = match surface {
                Some(s) => vec![s.into()],
                None => Surface::ALL.to_vec(),
            };
            let n_max = r * row_vertices(r, max_v) / 2;
            let mut text = String::new();
            for s in surfaces {
                let family = FamilyId::new(s, FamilyKind::Single, r)?;
                let (table, status) = cache.load_or_build(family, n_max)?;
                text.push_str(&format!(
                    "{} {} n_max={} {}\n",
                    status_name(status),
                    family,
                    table.n_max(),
                    cache.path_for(family).display()
                ));
            }
            write_out(&text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
