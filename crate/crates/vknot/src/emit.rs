//! Table and JSON rendering.

use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{CensusEntry, FlatClass, FlatDiagramGroup, PolyGroup};
use crate::report::{InvariantReport, ReportConfig};

pub const SCHEMA: &str = "vknot-census/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown output format `{0}` (expected `table` or `json`)")]
pub struct UnknownFormat(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

/// A census as written to disk: config and tool version travel with the
/// entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDocument {
    pub schema: String,
    pub config: ReportConfig,
    pub entries: Vec<CensusEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub groups: Option<Grouping>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", content = "groups", rename_all = "kebab-case")]
pub enum Grouping {
    Poly(Vec<PolyGroup>),
    Flat(Vec<FlatClass>),
    FlatDiagram(Vec<FlatDiagramGroup>),
}

impl CensusDocument {
    pub fn new(config: ReportConfig, entries: Vec<CensusEntry>, groups: Option<Grouping>) -> Self {
        CensusDocument { schema: SCHEMA.to_string(), config, entries, groups }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn emit_document(doc: &CensusDocument, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Table => match &doc.groups {
            None => entries_table(&doc.entries),
            Some(Grouping::Poly(g)) => poly_table(g),
            Some(Grouping::Flat(g)) => flat_table(g),
            Some(Grouping::FlatDiagram(g)) => flat_diagram_table(g),
        },
    }
}

fn table<'a>(header: [&str; 2], rows: impl IntoIterator<Item = (String, &'a str)>) -> String {
    let rows: Vec<(String, &str)> = rows.into_iter().collect();
    let width = rows.iter().map(|(l, _)| l.chars().count()).chain([header[0].len()]).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$} | {}", header[0], header[1]);
    for (left, right) in rows {
        let _ = writeln!(out, "{left:<width$} | {right}");
    }
    out
}

pub fn entries_table(entries: &[CensusEntry]) -> String {
    table(
        ["knot", "P"],
        entries.iter().map(|e| (e.name.clone(), e.report.invariants.affine_index_polynomial.text.as_str())),
    )
}

/// Two columns like the published grouping: names, starred when the entry
/// carries the negated polynomial, and the group's polynomial.
pub fn poly_table(groups: &[PolyGroup]) -> String {
    table(
        ["knots", "P"],
        groups.iter().map(|g| {
            let names: Vec<String> =
                g.members.iter().map(|m| if m.mirrored { format!("{}*", m.name) } else { m.name.clone() }).collect();
            (names.join(", "), g.key.as_str())
        }),
    )
}

pub fn flat_table(classes: &[FlatClass]) -> String {
    let labels: Vec<String> = classes
        .iter()
        .map(|c| {
            if c.unresolved {
                format!("{} (unresolved)", display_flat(&c.flat))
            } else {
                display_flat(&c.flat).to_string()
            }
        })
        .collect();
    table(["knots", "flat class"], classes.iter().zip(&labels).map(|(c, l)| (c.members.join(", "), l.as_str())))
}

pub fn flat_diagram_table(groups: &[FlatDiagramGroup]) -> String {
    table(["knots", "flat diagram"], groups.iter().map(|g| (g.members.join(", "), display_flat(&g.flat))))
}

fn display_flat(word: &str) -> &str {
    if word.is_empty() {
        "(empty)"
    } else {
        word
    }
}

pub fn report_json(report: &InvariantReport) -> String {
    to_json(report)
}

/// Human-readable single-diagram report.
pub fn report_text(report: &InvariantReport) -> String {
    let inv = &report.invariants;
    let mut out = String::new();
    let _ = writeln!(out, "code: {}", report.code);
    let _ = writeln!(out, "canonical: {}", report.canonical);
    let _ = writeln!(out, "crossings: {}", report.crossings);
    for c in &report.indices {
        let _ = writeln!(out, "crossing {}: sign {:+}, index {}", c.crossing, c.sign, c.index);
    }
    let _ = writeln!(out, "P: {}", inv.affine_index_polynomial.text);
    for w in &inv.writhes {
        let _ = writeln!(out, "J_{}: {}", w.n, w.value);
    }
    for w in &inv.dwrithes {
        let _ = writeln!(out, "dJ_{}: {}", w.n, w.value);
    }
    for p in &inv.l {
        let _ = writeln!(out, "L^{}: {}", p.n, p.text);
    }
    for p in &inv.f {
        let _ = writeln!(out, "F^{}: {}", p.n, p.text);
    }
    let _ = writeln!(out, "flat: {} ({})", display_flat(&report.flat.code), report.flat.verdict.status);
    let _ = writeln!(out, "totally flat-trivial: {}", report.tft.status);
    out
}
