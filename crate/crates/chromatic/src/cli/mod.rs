//! Command-line front end: subcommands for each computation, and `run`,
//! which evaluates manifest cases and streams one JSON report per line.
//!
//! Exit status is 0 when everything selected passes, 1 when a check
//! fails and 2 for invalid parameters or usage.

pub mod cases;
pub mod manifest;
pub mod tables;

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use cases::{prepare, run_case, RunContext, RunReport};
use manifest::{CaseParams, Manifest};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("bad bounds {0:?}, expected INTERNAL,GROUPOID")]
    Bounds(String),
    #[error(transparent)]
    Case(#[from] cases::CaseError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) | CliError::Case(_) => EXIT_FAIL,
            _ => EXIT_INVALID,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Jsonl,
    Csv,
}

/// `INTERNAL,GROUPOID`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsArg(pub [u64; 2]);

impl FromStr for BoundsArg {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [a, b] => match (a.parse(), b.parse()) {
                (Ok(a), Ok(b)) => Ok(BoundsArg([a, b])),
                _ => Err(CliError::Bounds(s.into())),
            },
            _ => Err(CliError::Bounds(s.into())),
        }
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    #[arg(long, global = true)]
    pub p: Option<u64>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true)]
    pub r: Option<u32>,
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Rank, or the largest rank or dimension of a table.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Page or level index.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Orbit level `L`, working in `(Z/p^L)^n`.
    #[arg(long, global = true)]
    pub level: Option<u32>,
    /// Series truncation order.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Work modulo `p^precision`.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Spectral sequence bounds as `INTERNAL,GROUPOID`.
    #[arg(long, global = true)]
    pub bounds: Option<BoundsArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Seconds before saturation loops stop and report "unsaturated".
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

impl Flags {
    /// Parameter overrides for manifest cases.
    pub fn overrides(&self) -> CaseParams {
        CaseParams {
            p: self.p,
            n: self.n,
            r: self.r,
            q: self.q,
            d: self.d,
            k: self.k,
            kmax: None,
            level: self.level,
            trunc: self.trunc,
            precision: self.precision,
            bounds: self.bounds.map(|b| b.0),
            budget: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CharTable {
    Orbits,
    Products,
    Verify,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Logarithm and `[m]`-series of the height-`n` law.
    Fgl {
        /// Multiplier for the `[m]`-series (default `p`).
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Tanabe quotients for ranks `0..=d`.
    Kring,
    /// Homology of page `k` against page `k + 1`, per tridegree.
    Ss,
    /// Character calculus tables.
    Char {
        #[arg(value_enum, default_value = "orbits")]
        table: CharTable,
    },
    /// Evaluate manifest cases by id, or `all`.
    Run {
        cases: Vec<String>,
        /// Replace the built-in manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// List the manifest instead of running it.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Debug, Parser)]
#[command(name = "chromatic", version, about = "Exact computations for Morava K-theory of finite general linear groups")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

/// Parse arguments, run, and return the exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let flags = &cli.flags;
    match &cli.command {
        Command::Fgl { m } => tables::fgl(flags, *m, out),
        Command::Kring => tables::kring(flags, out),
        Command::Ss => tables::ss(flags, out),
        Command::Char { table } => tables::char_table(flags, *table, out),
        Command::Run { cases, manifest, list } => {
            let manifest = match manifest {
                Some(path) => Manifest::load(path)?,
                None => Manifest::builtin(),
            };
            if *list {
                for case in &manifest.cases {
                    writeln!(out, "{}", serde_json::to_string(case)?)?;
                }
                return Ok(EXIT_PASS);
            }
            run(&manifest, cases, flags, out)
        }
    }
}

/// Validate every selected case, then evaluate them in id order.
pub fn run(manifest: &Manifest, names: &[String], flags: &Flags, out: &mut dyn Write) -> Result<i32, CliError> {
    let selected = manifest.select(names)?;
    let overrides = flags.overrides();
    let prepared = selected.iter().map(|c| prepare(c, &overrides)).collect::<Result<Vec<_>, _>>()?;
    let rc = RunContext { cache_dir: flags.cache_dir.clone(), budget: flags.budget };
    let format = flags.format.unwrap_or(Format::Jsonl);
    let mut reports: Vec<RunReport> = Vec::new();
    let mut writer = (format == Format::Csv).then(|| csv::Writer::from_writer(Vec::new()));
    if let Some(w) = writer.as_mut() {
        w.write_record(["case", "claim", "pass", "wall_ms"])?;
    }
    if prepared.is_empty() && format != Format::Csv {
        writeln!(out, "[]")?;
    }
    let mut all_pass = true;
    for prep in &prepared {
        let report = run_case(prep, &rc);
        all_pass &= report.pass;
        match format {
            Format::Jsonl => {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
                out.flush()?;
            }
            Format::Csv => {
                let w = writer.as_mut().expect("csv writer");
                w.write_record([
                    report.case.as_str(),
                    report.claim.as_str(),
                    if report.pass { "true" } else { "false" },
                    &report.timing.wall_ms.to_string(),
                ])?;
            }
            Format::Json => reports.push(report),
        }
    }
    if format == Format::Json && !prepared.is_empty() {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    }
    if let Some(w) = writer {
        out.write_all(&w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)?;
    }
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}
