//! Command line front end for `fitheight-core`: the group-expression
//! parser, report formats, the JSONL result cache and the census runner.
//!
//! Exit codes: 0 success, 1 a proved inequality failed a check, 2 usage error,
//! 3 budget exceeded.

pub mod cache;
pub mod census;
pub mod eval;
pub mod parse;
pub mod report;
pub mod selftest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fitheight_core::towers::SearchMode;
use fitheight_core::Error;

use crate::cache::Cache;
use crate::eval::Limits;
use crate::report::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fitheight",
    version,
    about = "Fitting heights, towers and factorisation bounds of finite soluble groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "md")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Coset budget for orbit computations.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Refuse groups of larger predicted order (census default 1000000).
    #[arg(long, global = true)]
    pub max_order: Option<u64>,
    /// JSONL result cache.
    #[arg(long, global = true, env = cache::ENV_VAR)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExprArg {
    /// Group expression, e.g. "W(C(2),C(3))".
    #[arg(long)]
    pub expr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Budgeted,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Series and numeric invariants.
    Invariants {
        #[command(flatten)]
        expr: ExprArg,
        /// Also report the σ-series, e.g. "2,5".
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Every bound for the factorisation into Hall σ- and σ'-subgroups.
    Bounds {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(long)]
        sigma: String,
    },
    /// Longest tower found by search.
    Towers {
        #[command(flatten)]
        expr: ExprArg,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Also report the σ-block statistics of the tower.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Bounds over seeded random expressions, both σ orientations each.
    Census {
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Property checks over a built-in list of groups.
    Selftest,
}

/// Why a command did not produce a report.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Engine(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Budget(_) => EXIT_BUDGET,
            Failure::Engine(_) => EXIT_VIOLATION,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Invariant(_) => Failure::Engine(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<parse::ParseError> for Failure {
    fn from(e: parse::ParseError) -> Self {
        Failure::Usage(format!("parse error {e}"))
    }
}

/// Rendered report and exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
    pub warnings: Vec<String>,
}

fn render<T: serde::Serialize>(format: Format, v: &T, md: impl Fn(&T) -> String) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(report::json(v)),
        Format::Md => Ok(md(v)),
        Format::Csv => Err(Failure::Usage("csv output is only available for census".into())),
    }
}

fn code(failed: bool) -> i32 {
    if failed {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn open_cache(cli: &Cli) -> Result<Option<Cache>, Failure> {
    cli.cache
        .as_deref()
        .map(|p| Cache::open(p).map_err(|e| Failure::Usage(format!("cannot read cache {}: {e}", p.display()))))
        .transpose()
}

pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    let limits = Limits { budget: cli.budget, max_order: cli.max_order };
    let mut warnings = Vec::new();
    let (text, code) = match &cli.command {
        Command::Invariants { expr, sigma } => {
            let e = parse::parse(&expr.expr)?;
            let sigma = sigma.as_deref().map(parse::parse_sigma).transpose()?;
            let b = eval::construct(&e, &limits)?;
            let r = eval::invariants(&b, sigma.as_deref(), &limits)?;
            (render(cli.format, &r, report::invariants_md)?, EXIT_OK)
        }
        Command::Bounds { expr, sigma } => {
            let e = parse::parse(&expr.expr)?;
            let sigma = parse::parse_sigma(sigma)?;
            if cli.format == Format::Csv {
                return Err(Failure::Usage("csv output is only available for census".into()));
            }
            let cache = open_cache(cli)?;
            let key = cache::Key {
                expr: e.to_string(),
                sigma: sigma.clone(),
                engine_version: fitheight_core::VERSION.to_string(),
            };
            let r = match cache.as_ref().and_then(|c| c.get(&key)) {
                Some(r) => r.clone(),
                None => {
                    let b = eval::construct(&e, &limits)?;
                    let r = eval::record(&b, &sigma, &limits)?;
                    if let Some(c) = &cache {
                        if let Err(err) = c.append(&r) {
                            warnings.push(format!("cache write failed: {err}"));
                        }
                    }
                    r
                }
            };
            if let Some(c) = cache {
                warnings.extend(c.warnings);
            }
            (render(cli.format, &r.bounds, report::bounds_md)?, code(r.bounds.violations > 0))
        }
        Command::Towers { expr, mode, sigma } => {
            let e = parse::parse(&expr.expr)?;
            let sigma = sigma.as_deref().map(parse::parse_sigma).transpose()?;
            let b = eval::construct(&e, &limits)?;
            let mode = match mode {
                Mode::Exact => SearchMode::Exact,
                Mode::Budgeted => SearchMode::Budgeted,
            };
            let r = eval::towers(&b, mode, sigma.as_deref(), &limits)?;
            let failed = mode == SearchMode::Exact && !r.certified;
            (render(cli.format, &r, report::towers_md)?, code(failed))
        }
        Command::Census { count } => {
            let cache = open_cache(cli)?;
            let r = census::run(cli.seed, *count, &limits, cache.as_ref())?;
            if let Some(c) = cache {
                warnings.extend(c.warnings);
            }
            let failed = r.records.iter().any(|x| x.failed());
            let text = match cli.format {
                Format::Json => report::json(&r),
                Format::Md => report::census_summary_md(&r),
                Format::Csv => report::census_csv(&r),
            };
            (text, code(failed))
        }
        Command::Selftest => {
            let r = selftest::run(cli.seed, &limits)?;
            (render(cli.format, &r, report::selftest_md)?, code(r.failures > 0))
        }
    };
    Ok(Output { text, code, warnings })
}
