//! Serializable invariant reports.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use vknot_core::flat::{self, replay, Certificate, FlatSite, FlatStep, Hand, SearchConfig, DEFAULT_BUDGET};
use vknot_core::{
    Diagram, DiagramError, Evaluation, FlatCode, FlatStatus, FlatVerdict, InvariantError, LaurentPoly, LaurentPoly2,
    TftReport,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl ReportError {
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            ReportError::Inconsistent(_)
                | ReportError::Invariant(InvariantError::Diagram(DiagramError::InternalInconsistency { .. }))
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub budget: usize,
    pub r3_depth_cap: usize,
    pub insertion_headroom: usize,
    /// Largest `n` for `J_n`, `L^n` and `F^n`; `None` uses the index bound.
    pub n_max: Option<i64>,
}

impl Default for ReportConfig {
    fn default() -> Self {
        let s = SearchConfig::default();
        ReportConfig {
            budget: DEFAULT_BUDGET,
            r3_depth_cap: s.r3_depth_cap,
            insertion_headroom: s.insertion_headroom,
            n_max: None,
        }
    }
}

impl ReportConfig {
    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            budget: self.budget,
            r3_depth_cap: self.r3_depth_cap,
            insertion_headroom: self.insertion_headroom,
        }
    }
}

/// Where a report came from and what it was computed with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub budget: usize,
    pub r3_depth_cap: usize,
    pub insertion_headroom: usize,
    pub convention: String,
    /// Scramble seeds that produced the code, outermost last.
    pub seeds: Vec<u64>,
    pub scramble_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub text: String,
    /// `[t-exponent, coefficient]`.
    pub terms: Vec<[i64; 2]>,
}

impl From<&LaurentPoly> for Poly {
    fn from(p: &LaurentPoly) -> Self {
        Poly { text: p.to_string(), terms: p.terms().map(|(e, c)| [e, c]).collect() }
    }
}

impl Poly {
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|&[e, c]| (e, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly2 {
    pub n: i64,
    pub text: String,
    /// `[t-exponent, l-exponent, coefficient]`.
    pub terms: Vec<[i64; 3]>,
}

impl Poly2 {
    fn new(n: i64, p: &LaurentPoly2) -> Self {
        Poly2 { n, text: p.to_string(), terms: p.terms().map(|(t, l, c)| [t, l, c]).collect() }
    }

    pub fn to_poly(&self) -> LaurentPoly2 {
        LaurentPoly2::from_terms(self.terms.iter().map(|&[t, l, c]| (t, l, c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NValue {
    pub n: i64,
    pub value: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub crossing: u32,
    pub sign: i64,
    pub index: i64,
}

/// Everything that must survive Reidemeister moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub affine_index_polynomial: Poly,
    pub n_max: i64,
    /// `J_n` for `n` in `-n_max..=n_max`, `n != 0`.
    pub writhes: Vec<NValue>,
    /// `∇J_n` for `n` in `1..=n_max`.
    pub dwrithes: Vec<NValue>,
    pub l: Vec<Poly2>,
    pub f: Vec<Poly2>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HandJson {
    R,
    L,
}

impl From<Hand> for HandJson {
    fn from(h: Hand) -> Self {
        match h {
            Hand::RightToLeft => HandJson::R,
            Hand::LeftToRight => HandJson::L,
        }
    }
}

impl From<HandJson> for Hand {
    fn from(h: HandJson) -> Self {
        match h {
            HandJson::R => Hand::RightToLeft,
            HandJson::L => Hand::LeftToRight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum SiteJson {
    #[serde(rename = "R1-")]
    R1Remove { at: usize },
    #[serde(rename = "R2-")]
    R2Remove { first: usize, second: usize },
    #[serde(rename = "R3")]
    R3 { pairs: [usize; 3] },
    #[serde(rename = "R1+")]
    R1Insert { gap: usize, hand: HandJson },
    #[serde(rename = "R2+")]
    R2Insert { gap_a: usize, gap_b: usize, parallel: bool, hand: HandJson, a_first: bool },
}

impl From<FlatSite> for SiteJson {
    fn from(s: FlatSite) -> Self {
        match s {
            FlatSite::R1Remove { at } => SiteJson::R1Remove { at },
            FlatSite::R2Remove { first, second } => SiteJson::R2Remove { first, second },
            FlatSite::R3 { pairs } => SiteJson::R3 { pairs },
            FlatSite::R1Insert { gap, hand } => SiteJson::R1Insert { gap, hand: hand.into() },
            FlatSite::R2Insert { gap_a, gap_b, parallel, hand, a_first } => {
                SiteJson::R2Insert { gap_a, gap_b, parallel, hand: hand.into(), a_first }
            }
        }
    }
}

impl From<SiteJson> for FlatSite {
    fn from(s: SiteJson) -> Self {
        match s {
            SiteJson::R1Remove { at } => FlatSite::R1Remove { at },
            SiteJson::R2Remove { first, second } => FlatSite::R2Remove { first, second },
            SiteJson::R3 { pairs } => FlatSite::R3 { pairs },
            SiteJson::R1Insert { gap, hand } => FlatSite::R1Insert { gap, hand: hand.into() },
            SiteJson::R2Insert { gap_a, gap_b, parallel, hand, a_first } => {
                FlatSite::R2Insert { gap_a, gap_b, parallel, hand: hand.into(), a_first }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    #[serde(flatten)]
    pub site: SiteJson,
    pub after: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: i64,
    pub dwrithe: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub status: String,
    pub trace: Vec<StepJson>,
    pub certificate: Option<CertificateJson>,
    pub budget_used: usize,
}

impl From<&FlatVerdict> for VerdictJson {
    fn from(v: &FlatVerdict) -> Self {
        VerdictJson {
            status: v.status.to_string(),
            trace: v.trace.iter().map(|s| StepJson { site: s.site.into(), after: s.after.to_string() }).collect(),
            certificate: v.certificate.map(|Certificate { n, dwrithe }| CertificateJson { n, dwrithe }),
            budget_used: v.budget_used,
        }
    }
}

impl VerdictJson {
    /// Replays the recorded evidence against `flat`.
    pub fn verify(&self, flat: &FlatCode) -> bool {
        let Ok(trace) = self
            .trace
            .iter()
            .map(|s| s.after.parse::<FlatCode>().map(|after| FlatStep { site: s.site.into(), after }))
            .collect::<Result<Vec<_>, _>>()
        else {
            return false;
        };
        match self.status.as_str() {
            "trivial" => replay(flat, &trace).is_ok_and(|w| w.is_empty()),
            "nontrivial" => self.certificate.is_some_and(|c| c.dwrithe != 0 && flat.dwrithe(c.n) == Ok(c.dwrithe)),
            "unknown" => trace.is_empty(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatJson {
    pub code: String,
    pub verdict: VerdictJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingJson {
    pub crossing: u32,
    pub code: String,
    pub flat: String,
    pub verdict: VerdictJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TftJson {
    pub status: String,
    pub convention: String,
    pub smoothings: Vec<SmoothingJson>,
}

impl From<&TftReport> for TftJson {
    fn from(r: &TftReport) -> Self {
        TftJson {
            status: r.status.to_string(),
            convention: r.convention.to_string(),
            smoothings: r
                .smoothings
                .iter()
                .map(|s| SmoothingJson {
                    crossing: s.crossing,
                    code: s.smoothed.to_string(),
                    flat: s.flat.to_string(),
                    verdict: (&s.verdict).into(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub code: String,
    pub canonical: String,
    pub crossings: usize,
    pub indices: Vec<IndexEntry>,
    pub invariants: Invariants,
    pub flat: FlatJson,
    pub tft: TftJson,
    pub provenance: Provenance,
}

/// Full report for one diagram. Every verdict is replayed before it is
/// returned.
pub fn compute_report(d: &Diagram, config: &ReportConfig) -> Result<InvariantReport, ReportError> {
    d.cheng_coloring().map_err(InvariantError::from)?;
    let e = Evaluation::new(d)?;
    let n_max = config.n_max.unwrap_or_else(|| e.index_bound());
    if n_max < 1 {
        return Err(InvariantError::NonPositiveN(n_max).into());
    }
    let table = e.table();
    let p = e.affine_index_polynomial();
    let mut writhes = Vec::new();
    for n in (-n_max..=n_max).filter(|&n| n != 0) {
        writhes.push(NValue { n, value: table.n_writhe(n)? });
    }
    let mut dwrithes = Vec::new();
    let mut l = Vec::new();
    let mut f = Vec::new();
    for n in 1..=n_max {
        dwrithes.push(NValue { n, value: table.n_dwrithe(n)? });
        l.push(Poly2::new(n, &e.l_polynomial(n)?));
        f.push(Poly2::new(n, &e.f_polynomial(n)?));
    }
    let tft = flat::is_totally_flat_trivial_with(d, config.search());
    if !tft.diagram.verify(&tft.flat) {
        return Err(ReportError::Inconsistent(format!("flat verdict for {d} does not replay")));
    }
    if let Some(s) = tft.smoothings.iter().find(|s| !s.verdict.verify(&s.flat)) {
        return Err(ReportError::Inconsistent(format!("flat verdict for smoothing at {} does not replay", s.crossing)));
    }
    Ok(InvariantReport {
        code: d.to_string(),
        canonical: d.code().canonicalize().to_string(),
        crossings: d.crossing_count(),
        indices: table
            .entries()
            .iter()
            .map(|c| IndexEntry { crossing: c.crossing, sign: c.sign.value(), index: c.index })
            .collect(),
        invariants: Invariants { affine_index_polynomial: (&p).into(), n_max, writhes, dwrithes, l, f },
        flat: FlatJson { code: tft.flat.to_string(), verdict: (&tft.diagram).into() },
        tft: (&tft).into(),
        provenance: Provenance {
            tool_version: TOOL_VERSION.to_string(),
            budget: config.budget,
            r3_depth_cap: config.r3_depth_cap,
            insertion_headroom: config.insertion_headroom,
            convention: tft.convention.to_string(),
            seeds: Vec::new(),
            scramble_steps: None,
        },
    })
}

impl InvariantReport {
    pub fn p(&self) -> LaurentPoly {
        self.invariants.affine_index_polynomial.to_poly()
    }

    pub fn flat_status(&self) -> FlatStatus {
        match self.flat.verdict.status.as_str() {
            "trivial" => FlatStatus::Trivial,
            "nontrivial" => FlatStatus::NontrivialCertified,
            _ => FlatStatus::Unknown,
        }
    }

    pub fn is_totally_flat_trivial(&self) -> bool {
        self.tft.status == "trivial"
    }

    /// Replays every recorded flat trace and certificate.
    pub fn verify_traces(&self) -> bool {
        let check = |code: &str, v: &VerdictJson| code.parse::<FlatCode>().is_ok_and(|f| v.verify(&f));
        check(&self.flat.code, &self.flat.verdict) && self.tft.smoothings.iter().all(|s| check(&s.flat, &s.verdict))
    }
}
