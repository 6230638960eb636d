//! Command-line front end. Each subcommand is a thin call into the library.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use vknot_core::flat::{self, flatten, render_trace, DEFAULT_BUDGET};
use vknot_core::Diagram;

use crate::census::{self, CensusError, CensusShell};
use crate::emit::{self, CensusDocument, Format, Grouping};
use crate::report::{compute_report, ReportConfig, ReportError};

#[derive(Debug, Parser)]
#[command(name = "vknot", version, about = "Invariants of oriented virtual knots from Gauss codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupBy {
    /// By affine index polynomial up to sign.
    Poly,
    /// By flat classes joined by found flat-move paths.
    Flat,
    /// By identical flat diagrams.
    FlatDiagram,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a census file.
    Validate { file: PathBuf },
    /// Full invariant report for a Gauss code or every row of a census file.
    Invariants {
        input: String,
        #[arg(long = "n-max")]
        n_max: Option<i64>,
        #[arg(long)]
        json: bool,
        #[arg(long, env = "VKNOT_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print the smoothing against orientation at one crossing.
    Smooth {
        code: String,
        #[arg(long)]
        at: u32,
    },
    /// Decide flat triviality by bounded search.
    FlatCheck {
        code: String,
        #[arg(long, env = "VKNOT_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Flat verdicts for a diagram and all of its smoothings.
    Tft {
        code: String,
        #[arg(long, env = "VKNOT_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Reports for every row of a census file, optionally grouped.
    Census {
        file: PathBuf,
        #[arg(long, value_enum)]
        group: Option<GroupBy>,
        #[arg(long, conflicts_with = "format")]
        json: bool,
        /// `table` or `json`.
        #[arg(long)]
        format: Option<String>,
        /// Add a copy of each row scrambled by this many random moves.
        #[arg(long, requires = "seed")]
        scramble: Option<usize>,
        #[arg(long, requires = "scramble")]
        seed: Option<u64>,
        #[arg(long = "n-max")]
        n_max: Option<i64>,
        #[arg(long, env = "VKNOT_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0:#}")]
    Input(anyhow::Error),
    #[error("internal inconsistency: {0:#}")]
    Internal(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.into())
        } else {
            CliError::Input(e.into())
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.into())
        } else {
            CliError::Input(e.into())
        }
    }
}

fn input<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Input(e.into())
}

fn parse_code(text: &str) -> Result<Diagram, CliError> {
    Diagram::parse(text).map_err(|e| input(anyhow!("invalid Gauss code: {e}")))
}

fn config(budget: usize, n_max: Option<i64>) -> ReportConfig {
    ReportConfig { budget, n_max, ..ReportConfig::default() }
}

/// Runs one command and returns what it prints on success.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let shells = census::ingest_path(&file)?;
            Ok(format!("{}: {} entries ok\n", file.display(), shells.len()))
        }
        Command::Invariants { input: arg, n_max, json, budget } => {
            let config = config(budget, n_max);
            let path = Path::new(&arg);
            if path.is_file() {
                let shells = census::ingest_path(path)?;
                let entries = census::compute_reports(&shells, &config)?;
                let doc = CensusDocument::new(config, entries, None);
                if json {
                    return Ok(emit::emit_document(&doc, Format::Json));
                }
                let mut out = String::new();
                for e in &doc.entries {
                    let _ = writeln!(out, "== {}", e.name);
                    out.push_str(&emit::report_text(&e.report));
                }
                return Ok(out);
            }
            let report = compute_report(&parse_code(&arg)?, &config)?;
            Ok(if json { emit::report_json(&report) } else { emit::report_text(&report) })
        }
        Command::Smooth { code, at } => {
            let d = parse_code(&code)?;
            let s = d.smooth_against_orientation(at).map_err(input)?;
            Ok(format!("{}\n", s.result))
        }
        Command::FlatCheck { code, budget } => {
            let f = flatten(&parse_code(&code)?);
            let v = flat::is_flat_trivial(&f, budget);
            if !v.verify(&f) {
                return Err(CliError::Internal(anyhow!("flat verdict for {f} does not replay")));
            }
            let mut out = String::new();
            let _ = writeln!(out, "flat: {}", if f.is_empty() { "(empty)".to_string() } else { f.to_string() });
            let _ = writeln!(out, "status: {}", v.status);
            if let Some(c) = v.certificate {
                let _ = writeln!(out, "certificate: dJ_{} = {}", c.n, c.dwrithe);
            }
            if !v.trace.is_empty() {
                let _ = writeln!(out, "trace: {}", render_trace(&v.trace));
            }
            let _ = writeln!(out, "nodes: {}", v.budget_used);
            Ok(out)
        }
        Command::Tft { code, budget } => {
            let d = parse_code(&code)?;
            let r = flat::is_totally_flat_trivial(&d, budget);
            let consistent = r.diagram.verify(&r.flat) && r.smoothings.iter().all(|s| s.verdict.verify(&s.flat));
            if !consistent {
                return Err(CliError::Internal(anyhow!("a flat verdict for {d} does not replay")));
            }
            let mut out = String::new();
            let _ = writeln!(out, "status: {}", r.status);
            let _ = writeln!(out, "convention: {}", r.convention);
            let _ = writeln!(out, "D: {} {}", r.flat, r.diagram.status);
            for s in &r.smoothings {
                let _ = writeln!(out, "D_{}: {} -> {} {}", s.crossing, s.smoothed, s.flat, s.verdict.status);
            }
            Ok(out)
        }
        Command::Census { file, group, json, format, scramble, seed, n_max, budget } => {
            let format = match format {
                Some(f) => f.parse::<Format>().map_err(input)?,
                None if json => Format::Json,
                None => Format::Table,
            };
            let mut shells: Vec<CensusShell> = census::ingest_path(&file)?;
            if let (Some(steps), Some(seed)) = (scramble, seed) {
                shells = census::with_scrambles(shells, steps, seed);
            }
            let mut config = config(budget, n_max);
            let entries = census::compute_reports(&shells, &config)?;
            config.n_max = entries.first().map(|e| e.report.invariants.n_max).or(config.n_max);
            let groups = group.map(|g| match g {
                GroupBy::Poly => Grouping::Poly(census::group_by_polynomial(&entries)),
                GroupBy::Flat => Grouping::Flat(census::group_by_flat_class(&entries, &config)),
                GroupBy::FlatDiagram => Grouping::FlatDiagram(census::group_by_flat_diagram(&entries)),
            });
            Ok(emit::emit_document(&CensusDocument::new(config, entries, groups), format))
        }
    }
}
