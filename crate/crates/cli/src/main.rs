//! `pedq`: coefficient tables, residue classification, and congruence
//! verification for the partition functions with distinct even parts.

mod cache;
mod commands;
mod report;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pedq_core::congruence::Target;
use pedq_core::series::Ring;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum TargetArg {
    /// partitions with distinct even parts
    Ped,
    /// bipartitions with distinct even parts
    Ped2,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Ped => Target::Ped,
            TargetArg::Ped2 => Target::Ped2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pedq",
    version,
    about = "Coefficient tables, mod-8 classification and congruence-family \
             verification for partitions and bipartitions with distinct even parts"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a coefficient table, optionally caching it
    Compute {
        #[arg(long, value_enum)]
        target: TargetArg,
        /// truncation order N (coefficients 0..=N)
        #[arg(long)]
        order: usize,
        /// coefficient ring: exact, mod2, mod4, mod8, mod3, mod12, mod24
        #[arg(long, default_value = "exact", value_parser = tables::parse_ring)]
        ring: Ring,
        /// cache file to read/write (default: auto-named under $PEDQ_CACHE_DIR)
        #[arg(long)]
        cache: Option<PathBuf>,
        /// print coefficients 0..=K to stdout as CSV
        #[arg(long, value_name = "K")]
        print: Option<usize>,
    },
    /// Classify ped2(n) mod 8 from the factorization of 4n+1
    Classify {
        /// the index n
        value: Option<u64>,
        /// the index n (flag form)
        #[arg(long, conflicts_with = "value")]
        n: Option<u64>,
        /// inclusive range A:B, emitted as rows n,value_or_residue,class
        #[arg(long, value_name = "A:B", conflicts_with_all = ["value", "n"])]
        range: Option<String>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// write data here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify congruence families against coefficient tables
    Verify {
        /// family id (ped-mod8, ped-mod4, ped2-mod8-i, ped2-mod8-ii,
        /// ped2-mod3, ped2-mod24, parity, classifier) or "all"
        family: String,
        /// prime parameter of the family
        #[arg(long)]
        p: Option<u64>,
        /// comma-separated residues r (default: all admissible)
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u64>>,
        /// largest alpha to sweep (default 1, except 0 for ped2-mod8-ii,
        /// whose multiplier grows like p^{8 alpha + 8})
        #[arg(long)]
        alpha_max: Option<u32>,
        /// sweep n = 0..=n-max per tuple
        #[arg(long)]
        n_max: Option<u64>,
        /// sweep every n whose argument stays <= max-arg (overrides --n-max)
        #[arg(long)]
        max_arg: Option<u64>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the theta product identities coefficient-exactly to an order
    Identities {
        order: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a cached coefficient table as CSV or JSON
    Export {
        #[arg(long)]
        cache: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let Some((a, b)) = s.split_once(':') else {
        bail!("range must look like A:B, got {s:?}");
    };
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Cmd::Compute { target, order, ring, cache, print } => {
            commands::cmd_compute(target.into(), order, ring, cache, print)
        }
        Cmd::Classify { value, n, range, cache, format, out } => {
            match (value.or(n), range) {
                (Some(n), None) => commands::cmd_classify_single(n, cache),
                (None, Some(r)) => {
                    let (lo, hi) = parse_range(&r)?;
                    commands::cmd_classify_range(lo, hi, cache, format, out.as_deref())
                }
                (None, None) => bail!("classify needs an index n or --range A:B"),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            }
        }
        Cmd::Verify { family, p, r, alpha_max, n_max, max_arg, cache, format, out } => {
            commands::cmd_verify(
                &family,
                commands::VerifyOpts { p, r, alpha_max, n_max, max_arg, cache, format, out },
            )
        }
        Cmd::Identities { order, format, out } => {
            commands::cmd_identities(order, format, out.as_deref())
        }
        Cmd::Export { cache, format, out } => {
            commands::cmd_export(&cache, format, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
