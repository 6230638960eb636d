//! Named Gauss-code tables: ingestion, batch reports and grouping.

use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use vknot_core::flat::find_flat_path;
use vknot_core::moves::scramble;
use vknot_core::{Diagram, FlatCode, GaussError, LaurentPoly, RawCode};

use crate::report::{compute_report, InvariantReport, ReportConfig, ReportError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: expected `name<TAB>code`")]
    MissingTab { line: usize },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: GaussError },
    #[error("line {line}: duplicate name `{name}` (first defined on line {first})")]
    DuplicateName { name: String, line: usize, first: usize },
    #[error("entry `{name}`: {source}")]
    Report { name: String, source: ReportError },
}

impl CensusError {
    pub fn is_internal(&self) -> bool {
        matches!(self, CensusError::Report { source, .. } if source.is_internal())
    }
}

/// One row of a census file, before any invariants are computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusShell {
    pub name: String,
    pub code: RawCode,
    /// Optional third column: the affine index polynomial recorded by an
    /// external source, used only for extended checks.
    pub expected: Option<String>,
    pub line: usize,
    /// Scramble seeds applied to the original row.
    pub seeds: Vec<u64>,
    pub scramble_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<String>,
    pub report: InvariantReport,
}

/// Parses `name<TAB>code[<TAB>expected]` lines; `#` comments and blank
/// lines are skipped.
pub fn ingest_str(text: &str) -> Result<Vec<CensusShell>, CensusError> {
    let mut out: Vec<CensusShell> = Vec::new();
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cols = raw.split('\t');
        let name = cols.next().unwrap_or_default().trim();
        let Some(code) = cols.next() else {
            return Err(CensusError::MissingTab { line });
        };
        if name.is_empty() {
            return Err(CensusError::MissingTab { line });
        }
        let code = RawCode::parse(code).map_err(|source| CensusError::Parse { line, source })?;
        let expected = cols.next().map(str::trim).filter(|s| !s.is_empty()).map(str::to_string);
        if let Some(&first) = names.get(name) {
            return Err(CensusError::DuplicateName { name: name.to_string(), line, first });
        }
        names.insert(name.to_string(), line);
        out.push(CensusShell { name: name.to_string(), code, expected, line, seeds: Vec::new(), scramble_steps: None });
    }
    Ok(out)
}

pub fn ingest_reader(reader: impl BufRead, path: &str) -> Result<Vec<CensusShell>, CensusError> {
    let text = std::io::read_to_string(reader).map_err(|source| CensusError::Io { path: path.to_string(), source })?;
    ingest_str(&text)
}

pub fn ingest_path(path: &Path) -> Result<Vec<CensusShell>, CensusError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CensusError::Io { path: path.display().to_string(), source })?;
    ingest_str(&text)
}

/// Appends, after each row, a copy scrambled by `steps` random moves with
/// the given seed. Copies are named `name~seed`.
pub fn with_scrambles(shells: Vec<CensusShell>, steps: usize, seed: u64) -> Vec<CensusShell> {
    shells
        .into_iter()
        .flat_map(|s| {
            let d = scramble(&Diagram::build(&s.code), steps, seed);
            let mut seeds = s.seeds.clone();
            seeds.push(seed);
            let copy = CensusShell {
                name: format!("{}~{seed}", s.name),
                code: d.code().clone(),
                expected: s.expected.clone(),
                line: s.line,
                seeds,
                scramble_steps: Some(steps),
            };
            [s, copy]
        })
        .collect()
}

/// Reports for every row, computed in parallel. Without an explicit
/// `n_max` all rows share the largest index bound in the census so their
/// reports are comparable.
pub fn compute_reports(shells: &[CensusShell], config: &ReportConfig) -> Result<Vec<CensusEntry>, CensusError> {
    let diagrams: Vec<Diagram> = shells.iter().map(|s| Diagram::build(&s.code)).collect();
    let mut config = *config;
    if config.n_max.is_none() {
        let bound = diagrams
            .par_iter()
            .map(|d| vknot_core::Evaluation::new(d).map(|e| e.index_bound()).unwrap_or(1))
            .max()
            .unwrap_or(1);
        config.n_max = Some(bound);
    }
    shells
        .par_iter()
        .zip(diagrams.par_iter())
        .map(|(s, d)| {
            let mut report =
                compute_report(d, &config).map_err(|source| CensusError::Report { name: s.name.clone(), source })?;
            report.provenance.seeds = s.seeds.clone();
            report.provenance.scramble_steps = s.scramble_steps;
            Ok(CensusEntry { name: s.name.clone(), expected: s.expected.clone(), report })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMember {
    pub name: String,
    /// The entry's polynomial is the negative of the group key.
    pub mirrored: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyGroup {
    pub key: String,
    pub members: Vec<PolyMember>,
}

/// Of `p` and `-p`, the one whose highest-degree coefficient is positive.
pub fn mirror_key(p: &LaurentPoly) -> LaurentPoly {
    match p.terms().last() {
        Some((_, c)) if c < 0 => -p.clone(),
        _ => p.clone(),
    }
}

/// Groups entries by the unordered pair `{P, -P}`. Groups are ordered by
/// their key's rendering, members keep census order.
pub fn group_by_polynomial(entries: &[CensusEntry]) -> Vec<PolyGroup> {
    let mut groups: BTreeMap<String, Vec<PolyMember>> = BTreeMap::new();
    for e in entries {
        let p = e.report.p();
        let key = mirror_key(&p);
        groups.entry(key.to_string()).or_default().push(PolyMember { name: e.name.clone(), mirrored: key != p });
    }
    groups.into_iter().map(|(key, members)| PolyGroup { key, members }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatClass {
    /// Canonical flat word of the first member.
    pub flat: String,
    pub members: Vec<String>,
    /// Some other class is neither connected to this one by a found path
    /// nor separated from it by a flat dwrithe.
    pub unresolved: bool,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        // the smaller index stays root so classes are named by first member
        if a < b {
            self.0[b] = a;
        } else {
            self.0[a] = b;
        }
    }
}

fn dwrithe_vector(f: &FlatCode, n_max: i64) -> Vec<i64> {
    (1..=n_max).map(|n| f.dwrithe(n).unwrap_or(0)).collect()
}

/// Groups entries whose flat diagrams are joined by found flat-move paths.
/// Flat-trivial entries all meet at the empty word.
pub fn group_by_flat_class(entries: &[CensusEntry], config: &ReportConfig) -> Vec<FlatClass> {
    let flats: Vec<FlatCode> = entries
        .iter()
        .map(|e| e.report.flat.code.parse::<FlatCode>().map(|f| f.canonicalize()).unwrap_or_default())
        .collect();
    let mut uf = UnionFind((0..entries.len()).collect());
    let mut trivial: Option<usize> = None;
    for (i, e) in entries.iter().enumerate() {
        if let Some(j) = flats[..i].iter().position(|f| *f == flats[i]) {
            uf.union(i, j);
        }
        if e.report.flat.verdict.status == "trivial" {
            match trivial {
                Some(t) => uf.union(t, i),
                None => trivial = Some(i),
            }
        }
    }
    let n_max = flats.iter().map(|f| f.index_bound()).max().unwrap_or(1).max(1);
    let signatures: Vec<Vec<i64>> = flats.iter().map(|f| dwrithe_vector(f, n_max)).collect();
    // search between class representatives until no new path is found
    let mut searched: Vec<(usize, usize)> = Vec::new();
    loop {
        let roots: Vec<usize> = (0..entries.len()).filter(|&i| uf.find(i) == i).collect();
        let pair = roots.iter().enumerate().find_map(|(k, &a)| {
            roots[k + 1..]
                .iter()
                .find(|&&b| signatures[a] == signatures[b] && !searched.contains(&(a, b)))
                .map(|&b| (a, b))
        });
        let Some((a, b)) = pair else { break };
        searched.push((a, b));
        if find_flat_path(&flats[a], &flats[b], config.search()).path.is_some() {
            uf.union(a, b);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..entries.len() {
        classes.entry(uf.find(i)).or_default().push(i);
    }
    let roots: Vec<usize> = classes.keys().copied().collect();
    let unresolved = |r: usize| roots.iter().any(|&o| o != r && signatures[o] == signatures[r]);
    classes
        .into_iter()
        .map(|(root, members)| FlatClass {
            flat: flats[root].to_string(),
            members: members.iter().map(|&i| entries[i].name.clone()).collect(),
            unresolved: unresolved(root),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatDiagramGroup {
    pub flat: String,
    pub members: Vec<String>,
}

/// Groups entries with identical canonical flat diagrams.
pub fn group_by_flat_diagram(entries: &[CensusEntry]) -> Vec<FlatDiagramGroup> {
    let mut groups: Vec<FlatDiagramGroup> = Vec::new();
    for e in entries {
        let flat = e.report.flat.code.parse::<FlatCode>().map(|f| f.canonicalize()).unwrap_or_default().to_string();
        match groups.iter_mut().find(|g| g.flat == flat) {
            Some(g) => g.members.push(e.name.clone()),
            None => groups.push(FlatDiagramGroup { flat, members: vec![e.name.clone()] }),
        }
    }
    groups
}
