//! Flat knot diagrams (virtual strings) and a bounded search for flat
//! triviality.
//!
//! Forgetting over/under leaves, at each encounter with a crossing, the
//! direction in which the other strand crosses: right-to-left or
//! left-to-right as seen facing along this strand. The two encounters of one
//! crossing carry opposite directions.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::diagram::{Diagram, OrientationConvention};
use crate::gauss::{least_relabeled_rotation, PassToken, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error("n must be positive, got {0}")]
    NonPositiveN(i64),
    #[error("malformed flat word at token {0}")]
    Malformed(usize),
    #[error("crossing {0} must appear exactly twice with opposite handedness")]
    BadPairing(u32),
    #[error("flat move site does not match the word")]
    StaleSite,
    #[error("replay diverges from the recorded trace at step {0}")]
    ReplayMismatch(usize),
}

/// Direction in which the co-strand crosses this strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hand {
    RightToLeft,
    LeftToRight,
}

impl Hand {
    pub fn opposite(self) -> Hand {
        match self {
            Hand::RightToLeft => Hand::LeftToRight,
            Hand::LeftToRight => Hand::RightToLeft,
        }
    }

    fn value(self) -> i64 {
        match self {
            Hand::RightToLeft => 1,
            Hand::LeftToRight => -1,
        }
    }

    /// Positive crossing: the over strand is crossed right-to-left. Negative
    /// crossing: the reverse.
    pub fn of_pass(role: Role, sign: Sign) -> Hand {
        if (role == Role::Over) == (sign == Sign::Plus) {
            Hand::RightToLeft
        } else {
            Hand::LeftToRight
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatPass {
    pub crossing: u32,
    pub hand: Hand,
}

/// Cyclic flat Gauss word. Text form: `R1R2L1L2`, where `R` marks a
/// right-to-left encounter.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatCode {
    word: Vec<FlatPass>,
}

impl FlatCode {
    pub fn new(word: Vec<FlatPass>) -> Result<FlatCode, FlatError> {
        let mut seen: BTreeMap<u32, (usize, Hand)> = BTreeMap::new();
        for p in &word {
            let e = seen.entry(p.crossing).or_insert((0, p.hand));
            e.0 += 1;
            if e.0 > 2 || (e.0 == 2 && e.1 == p.hand) || p.crossing == 0 {
                return Err(FlatError::BadPairing(p.crossing));
            }
        }
        if let Some((&id, _)) = seen.iter().find(|(_, v)| v.0 != 2) {
            return Err(FlatError::BadPairing(id));
        }
        Ok(FlatCode { word })
    }

    fn from_word(word: Vec<FlatPass>) -> FlatCode {
        debug_assert!(FlatCode::new(word.clone()).is_ok());
        FlatCode { word }
    }

    pub fn word(&self) -> &[FlatPass] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.word.len() / 2
    }

    /// Least rotation with first-appearance relabeling; handedness is kept.
    pub fn canonicalize(&self) -> FlatCode {
        FlatCode { word: least_relabeled_rotation(&self.word, |p| p.crossing, |p, id| FlatPass { crossing: id, ..*p }) }
    }

    /// The lift with every crossing positive: right-to-left encounters
    /// become over passes.
    pub fn lift(&self) -> Diagram {
        self.lift_with(|_| false)
    }

    /// Lift where the crossings selected by `negative` are made negative
    /// (their right-to-left encounter becomes the under pass).
    pub fn lift_with(&self, negative: impl Fn(u32) -> bool) -> Diagram {
        let tokens = self
            .word
            .iter()
            .map(|p| {
                let neg = negative(p.crossing);
                let sign = if neg { Sign::Minus } else { Sign::Plus };
                let over = (p.hand == Hand::RightToLeft) != neg;
                PassToken::new(if over { Role::Over } else { Role::Under }, p.crossing, sign)
            })
            .collect();
        Diagram::from_tokens(tokens)
    }

    fn partner(&self, p: usize) -> usize {
        let id = self.word[p].crossing;
        self.word.iter().enumerate().position(|(i, q)| i != p && q.crossing == id).expect("paired")
    }

    /// Flat crossing indices `a - b - 1` from labels computed on the flat
    /// data alone: a right-to-left encounter lowers the label by one, a
    /// left-to-right one raises it.
    pub fn flat_indices(&self) -> Vec<(u32, i64)> {
        let n = self.word.len();
        if n == 0 {
            return Vec::new();
        }
        // walk once for the arc leaving position 0, then follow the local
        // relations around the word
        let mut met = BTreeSet::new();
        let mut first = 0;
        for step in 1..=n {
            let p = &self.word[step % n];
            if met.insert(p.crossing) && p.hand == Hand::RightToLeft {
                first += 1;
            }
        }
        let mut labels = Vec::with_capacity(n);
        labels.push(first);
        for p in &self.word[1..] {
            let prev = labels[labels.len() - 1];
            labels.push(prev - p.hand.value());
        }
        let into = |p: usize| labels[(p + n - 1) % n];
        let mut out: BTreeMap<u32, (i64, i64)> = BTreeMap::new();
        for (i, p) in self.word.iter().enumerate() {
            let e = out.entry(p.crossing).or_default();
            match p.hand {
                Hand::RightToLeft => e.0 = into(i),
                Hand::LeftToRight => e.1 = into(i),
            }
        }
        out.into_iter().map(|(id, (a, b))| (id, a - b - 1)).collect()
    }

    pub fn index_bound(&self) -> i64 {
        self.flat_indices().iter().map(|(_, i)| i.abs()).max().unwrap_or(0).max(1)
    }

    pub fn dwrithe(&self, n: i64) -> Result<i64, FlatError> {
        if n < 1 {
            return Err(FlatError::NonPositiveN(n));
        }
        Ok(self
            .flat_indices()
            .iter()
            .map(|&(_, i)| {
                if i == n {
                    1
                } else if i == -n {
                    -1
                } else {
                    0
                }
            })
            .sum())
    }
}

impl fmt::Display for FlatCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.word {
            let h = if p.hand == Hand::RightToLeft { 'R' } else { 'L' };
            write!(f, "{h}{}", p.crossing)?;
        }
        Ok(())
    }
}

impl FromStr for FlatCode {
    type Err = FlatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut word = Vec::new();
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            let idx = word.len();
            let hand = match c {
                'R' => Hand::RightToLeft,
                'L' => Hand::LeftToRight,
                _ => return Err(FlatError::Malformed(idx)),
            };
            let mut id: u32 = 0;
            let mut digits = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                chars.next();
                id = id.checked_mul(10).and_then(|v| v.checked_add(d)).ok_or(FlatError::Malformed(idx))?;
                digits += 1;
            }
            if digits == 0 {
                return Err(FlatError::Malformed(idx));
            }
            word.push(FlatPass { crossing: id, hand });
        }
        FlatCode::new(word)
    }
}

pub fn flatten(d: &Diagram) -> FlatCode {
    FlatCode::from_word(
        d.passes().iter().map(|t| FlatPass { crossing: t.crossing, hand: Hand::of_pass(t.role, t.sign) }).collect(),
    )
}

pub fn flat_cheng_dwrithe(f: &FlatCode, n: i64) -> Result<i64, FlatError> {
    f.dwrithe(n)
}

/// A flat rewrite. Pair positions and gaps follow the classical moves:
/// a pair at `p` occupies `p` and `p + 1` cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlatSite {
    R1Remove {
        at: usize,
    },
    R2Remove {
        first: usize,
        second: usize,
    },
    R3 {
        pairs: [usize; 3],
    },
    /// Inserts `x h, x -h` before position `gap`.
    R1Insert {
        gap: usize,
        hand: Hand,
    },
    /// Inserts `x h, y -h` at `gap_a` and `x -h, y h` (parallel) or
    /// `y h, x -h` at `gap_b`.
    R2Insert {
        gap_a: usize,
        gap_b: usize,
        parallel: bool,
        hand: Hand,
        a_first: bool,
    },
}

impl FlatSite {
    pub fn name(&self) -> &'static str {
        match self {
            FlatSite::R1Remove { .. } => "R1-",
            FlatSite::R2Remove { .. } => "R2-",
            FlatSite::R3 { .. } => "R3",
            FlatSite::R1Insert { .. } => "R1+",
            FlatSite::R2Insert { .. } => "R2+",
        }
    }

    pub fn crossing_delta(&self) -> isize {
        match self {
            FlatSite::R1Remove { .. } => -1,
            FlatSite::R2Remove { .. } => -2,
            FlatSite::R3 { .. } => 0,
            FlatSite::R1Insert { .. } => 1,
            FlatSite::R2Insert { .. } => 2,
        }
    }
}

fn next(p: usize, n: usize) -> usize {
    (p + 1) % n
}

fn pair_start(p: usize, q: usize, n: usize) -> Option<usize> {
    if next(p, n) == q {
        Some(p)
    } else if next(q, n) == p {
        Some(q)
    } else {
        None
    }
}

/// Flat RI and RII removals plus RIII rewrites.
pub fn flat_moves(f: &FlatCode) -> Vec<FlatSite> {
    let mut out = Vec::new();
    let w = f.word();
    let n = w.len();
    let r1_span = if n == 2 { 1 } else { n };
    for at in 0..r1_span {
        if w[at].crossing == w[next(at, n)].crossing {
            out.push(FlatSite::R1Remove { at });
        }
    }
    if n < 4 {
        return out;
    }
    for first in 0..n {
        let (a, b) = (w[first], w[next(first, n)]);
        if a.crossing == b.crossing || a.hand == b.hand {
            continue;
        }
        let (pa, pb) = (f.partner(first), f.partner(next(first, n)));
        if let Some(second) = pair_start(pa, pb, n) {
            if first < second {
                out.push(FlatSite::R2Remove { first, second });
            }
        }
    }
    if n < 6 {
        return out;
    }
    for p1 in 0..n {
        let q1 = next(p1, n);
        let (u, v) = (w[p1].crossing, w[q1].crossing);
        if u == v {
            continue;
        }
        // strand X meets u = XY then v = XZ, or the reverse
        for (xu, xv, e_x) in [(p1, q1, 1), (q1, p1, -1)] {
            let (yu, zv) = (f.partner(xu), f.partner(xv));
            for r in [(yu + n - 1) % n, next(yu, n)] {
                let wc = w[r].crossing;
                if wc == u || wc == v {
                    continue;
                }
                let p2 = pair_start(yu, r, n).expect("neighbors");
                let zw = f.partner(r);
                let Some(p3) = pair_start(zv, zw, n) else { continue };
                let e_y = if p2 == yu { 1 } else { -1 };
                let e_z = if p3 == zv { 1 } else { -1 };
                let o1 = w[xu].hand.value() * e_x * e_y;
                let o2 = w[xv].hand.value() * e_x * e_z;
                let o3 = w[r].hand.value() * e_y * e_z;
                if o1 == o2 && o2 == o3 {
                    let mut pairs = [p1, p2, p3];
                    pairs.sort_unstable();
                    let site = FlatSite::R3 { pairs };
                    if !out.contains(&site) {
                        out.push(site);
                    }
                }
            }
        }
    }
    out
}

pub fn flat_insertions(f: &FlatCode) -> Vec<FlatSite> {
    let gaps = f.len().max(1);
    let mut out = Vec::new();
    for gap in 0..gaps {
        for hand in [Hand::RightToLeft, Hand::LeftToRight] {
            out.push(FlatSite::R1Insert { gap, hand });
        }
    }
    for gap_a in 0..gaps {
        for gap_b in 0..gaps {
            let orders: &[bool] = if gap_a == gap_b { &[true, false] } else { &[true] };
            for &a_first in orders {
                for parallel in [true, false] {
                    for hand in [Hand::RightToLeft, Hand::LeftToRight] {
                        out.push(FlatSite::R2Insert { gap_a, gap_b, parallel, hand, a_first });
                    }
                }
            }
        }
    }
    out
}

fn insert_at_gaps(word: &[FlatPass], groups: &[(usize, &[FlatPass])]) -> Vec<FlatPass> {
    let mut out = Vec::with_capacity(word.len() + 4);
    for i in 0..word.len().max(1) {
        for (gap, items) in groups {
            if *gap == i {
                out.extend_from_slice(items);
            }
        }
        if let Some(p) = word.get(i) {
            out.push(*p);
        }
    }
    out
}

pub fn apply_flat(f: &FlatCode, site: &FlatSite) -> Result<FlatCode, FlatError> {
    let w = f.word();
    let n = w.len();
    let fresh = w.iter().map(|p| p.crossing).max().unwrap_or(0) + 1;
    let word = match *site {
        FlatSite::R1Remove { .. } | FlatSite::R2Remove { .. } | FlatSite::R3 { .. } => {
            if !flat_moves(f).contains(site) {
                return Err(FlatError::StaleSite);
            }
            match *site {
                FlatSite::R1Remove { at } => drop_positions(w, &[at, next(at, n)]),
                FlatSite::R2Remove { first, second } => {
                    drop_positions(w, &[first, next(first, n), second, next(second, n)])
                }
                FlatSite::R3 { pairs } => {
                    let mut out = w.to_vec();
                    for p in pairs {
                        out.swap(p, next(p, n));
                    }
                    out
                }
                _ => unreachable!(),
            }
        }
        FlatSite::R1Insert { gap, hand } => {
            if gap >= n.max(1) {
                return Err(FlatError::StaleSite);
            }
            let kink = [FlatPass { crossing: fresh, hand }, FlatPass { crossing: fresh, hand: hand.opposite() }];
            insert_at_gaps(w, &[(gap, &kink)])
        }
        FlatSite::R2Insert { gap_a, gap_b, parallel, hand, a_first } => {
            let gaps = n.max(1);
            if gap_a >= gaps || gap_b >= gaps || (gap_a != gap_b && !a_first) {
                return Err(FlatError::StaleSite);
            }
            let (x, y) = (fresh, fresh + 1);
            let strand_a = [FlatPass { crossing: x, hand }, FlatPass { crossing: y, hand: hand.opposite() }];
            let strand_b = if parallel {
                [FlatPass { crossing: x, hand: hand.opposite() }, FlatPass { crossing: y, hand }]
            } else {
                [FlatPass { crossing: y, hand }, FlatPass { crossing: x, hand: hand.opposite() }]
            };
            if a_first {
                insert_at_gaps(w, &[(gap_a, &strand_a), (gap_b, &strand_b)])
            } else {
                insert_at_gaps(w, &[(gap_b, &strand_b), (gap_a, &strand_a)])
            }
        }
    };
    Ok(FlatCode::from_word(word))
}

fn drop_positions(w: &[FlatPass], drop: &[usize]) -> Vec<FlatPass> {
    w.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, p)| *p).collect()
}

/// One step of a flat reduction: the site, applied to the canonical form of
/// the previous word, and the canonical word it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatStep {
    pub site: FlatSite,
    pub after: FlatCode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of distinct canonical words generated.
    pub budget: usize,
    /// Maximum number of RIII moves along one path.
    pub r3_depth_cap: usize,
    /// How far insertions may raise the crossing count above the larger of
    /// the start and target words.
    pub insertion_headroom: usize,
}

pub const DEFAULT_BUDGET: usize = 100_000;

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, r3_depth_cap: 8, insertion_headroom: 2 }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: usize) -> Self {
        SearchConfig { budget, ..SearchConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub path: Option<Vec<FlatStep>>,
    pub nodes: usize,
}

struct Node {
    word: FlatCode,
    parent: Option<(usize, FlatSite)>,
    r3_depth: usize,
}

/// Best-first search for a flat-move path from `start` to `target` (both
/// compared up to canonical form). Words with fewer crossings are expanded
/// first, so removals always run ahead of RIII and insertions.
pub fn find_flat_path(start: &FlatCode, target: &FlatCode, config: SearchConfig) -> SearchOutcome {
    let start = start.canonicalize();
    let target = target.canonicalize();
    let ceiling = start.crossing_count().max(target.crossing_count()) + config.insertion_headroom;
    let mut nodes = alloc::vec![Node { word: start.clone(), parent: None, r3_depth: 0 }];
    let mut seen: BTreeSet<FlatCode> = BTreeSet::new();
    seen.insert(start.clone());
    if start == target {
        return SearchOutcome { path: Some(Vec::new()), nodes: 1 };
    }
    let mut queue = BinaryHeap::new();
    queue.push(Reverse((start.crossing_count(), 0usize)));
    while let Some(Reverse((_, idx))) = queue.pop() {
        let (word, depth) = (nodes[idx].word.clone(), nodes[idx].r3_depth);
        let mut sites = flat_moves(&word);
        sites.extend(flat_insertions(&word));
        for site in sites {
            let is_r3 = matches!(site, FlatSite::R3 { .. });
            if is_r3 && depth >= config.r3_depth_cap {
                continue;
            }
            if (word.crossing_count() as isize + site.crossing_delta()) as usize > ceiling {
                continue;
            }
            let next = apply_flat(&word, &site).expect("enumerated site").canonicalize();
            if seen.contains(&next) {
                continue;
            }
            if nodes.len() >= config.budget {
                return SearchOutcome { path: None, nodes: nodes.len() };
            }
            seen.insert(next.clone());
            let crossings = next.crossing_count();
            let found = next == target;
            nodes.push(Node { word: next, parent: Some((idx, site)), r3_depth: depth + usize::from(is_r3) });
            let new_idx = nodes.len() - 1;
            if found {
                return SearchOutcome { path: Some(trace_back(&nodes, new_idx)), nodes: nodes.len() };
            }
            queue.push(Reverse((crossings, new_idx)));
        }
    }
    SearchOutcome { path: None, nodes: nodes.len() }
}

fn trace_back(nodes: &[Node], mut idx: usize) -> Vec<FlatStep> {
    let mut steps = Vec::new();
    while let Some((parent, site)) = nodes[idx].parent {
        steps.push(FlatStep { site, after: nodes[idx].word.clone() });
        idx = parent;
    }
    steps.reverse();
    steps
}

/// Replays a trace from the canonical form of `start`, checking each
/// recorded intermediate word. Returns the final word.
pub fn replay(start: &FlatCode, trace: &[FlatStep]) -> Result<FlatCode, FlatError> {
    let mut current = start.canonicalize();
    for (i, step) in trace.iter().enumerate() {
        current = apply_flat(&current, &step.site).map_err(|_| FlatError::ReplayMismatch(i))?.canonicalize();
        if current != step.after {
            return Err(FlatError::ReplayMismatch(i));
        }
    }
    Ok(current)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FlatStatus {
    Trivial,
    Unknown,
    NontrivialCertified,
}

impl fmt::Display for FlatStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlatStatus::Trivial => "trivial",
            FlatStatus::Unknown => "unknown",
            FlatStatus::NontrivialCertified => "nontrivial",
        })
    }
}

/// A nonzero flat dwrithe, which rules out flat triviality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub n: i64,
    pub dwrithe: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatVerdict {
    pub status: FlatStatus,
    pub trace: Vec<FlatStep>,
    pub certificate: Option<Certificate>,
    pub budget_used: usize,
}

impl FlatVerdict {
    /// Re-derives the verdict's evidence: the trace must end at the empty
    /// word, the certificate must recompute.
    pub fn verify(&self, f: &FlatCode) -> bool {
        match self.status {
            FlatStatus::Trivial => replay(f, &self.trace).is_ok_and(|w| w.is_empty()),
            FlatStatus::NontrivialCertified => {
                self.certificate.is_some_and(|c| c.dwrithe != 0 && f.dwrithe(c.n) == Ok(c.dwrithe))
            }
            FlatStatus::Unknown => true,
        }
    }
}

pub fn certificate(f: &FlatCode) -> Option<Certificate> {
    let indices = f.flat_indices();
    let bound = indices.iter().map(|(_, i)| i.abs()).max().unwrap_or(0);
    (1..=bound).find_map(|n| {
        let dw: i64 = indices
            .iter()
            .map(|&(_, i)| {
                if i == n {
                    1
                } else if i == -n {
                    -1
                } else {
                    0
                }
            })
            .sum();
        (dw != 0).then_some(Certificate { n, dwrithe: dw })
    })
}

pub fn is_flat_trivial(f: &FlatCode, budget: usize) -> FlatVerdict {
    is_flat_trivial_with(f, SearchConfig::with_budget(budget))
}

pub fn is_flat_trivial_with(f: &FlatCode, config: SearchConfig) -> FlatVerdict {
    if let Some(c) = certificate(f) {
        return FlatVerdict {
            status: FlatStatus::NontrivialCertified,
            trace: Vec::new(),
            certificate: Some(c),
            budget_used: 0,
        };
    }
    let outcome = find_flat_path(f, &FlatCode::default(), config);
    match outcome.path {
        Some(trace) => {
            FlatVerdict { status: FlatStatus::Trivial, trace, certificate: None, budget_used: outcome.nodes }
        }
        None => FlatVerdict {
            status: FlatStatus::Unknown,
            trace: Vec::new(),
            certificate: None,
            budget_used: outcome.nodes,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TftStatus {
    Trivial,
    Unknown,
    Nontrivial,
}

impl fmt::Display for TftStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TftStatus::Trivial => "trivial",
            TftStatus::Unknown => "unknown",
            TftStatus::Nontrivial => "nontrivial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingVerdict {
    pub crossing: u32,
    pub smoothed: Diagram,
    pub flat: FlatCode,
    pub verdict: FlatVerdict,
}

/// Flat verdicts for a diagram and all of its smoothings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TftReport {
    pub status: TftStatus,
    pub flat: FlatCode,
    pub diagram: FlatVerdict,
    pub smoothings: Vec<SmoothingVerdict>,
    pub convention: OrientationConvention,
}

pub fn is_totally_flat_trivial(d: &Diagram, budget: usize) -> TftReport {
    is_totally_flat_trivial_with(d, SearchConfig::with_budget(budget))
}

pub fn is_totally_flat_trivial_with(d: &Diagram, config: SearchConfig) -> TftReport {
    let flat = flatten(d);
    let diagram = is_flat_trivial_with(&flat, config);
    let smoothings: Vec<SmoothingVerdict> = d
        .crossing_ids()
        .map(|id| {
            let smoothed = d.smooth_against_orientation(id).expect("crossing of d").result;
            let flat = flatten(&smoothed);
            let verdict = is_flat_trivial_with(&flat, config);
            SmoothingVerdict { crossing: id, smoothed, flat, verdict }
        })
        .collect();
    let statuses = core::iter::once(diagram.status).chain(smoothings.iter().map(|s| s.verdict.status));
    let status = statuses.fold(TftStatus::Trivial, |acc, s| match (acc, s) {
        (TftStatus::Nontrivial, _) | (_, FlatStatus::NontrivialCertified) => TftStatus::Nontrivial,
        (TftStatus::Unknown, _) | (_, FlatStatus::Unknown) => TftStatus::Unknown,
        _ => TftStatus::Trivial,
    });
    TftReport { status, flat, diagram, smoothings, convention: OrientationConvention::OverExitKept }
}

/// Space-separated move names of a trace, e.g. `R2- R1-`.
pub fn render_trace(trace: &[FlatStep]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, step) in trace.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{}", step.site.name());
    }
    s
}
