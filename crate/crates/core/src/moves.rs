//! Classical Reidemeister moves as rewrites of the Gauss code.
//!
//! Virtual moves do not change a Gauss code, so only RI, RII and RIII
//! appear here. Every pattern below is checked behaviorally: applying it
//! must leave all invariants of the `invariant` module unchanged.
//!
//! RIII validity. Let the top strand pass over the middle strand at `tm`
//! and over the bottom strand at `tb`, and the middle pass over the bottom
//! at `mb`. Put `e_T = +1` if the top strand meets `tm` before `tb`,
//! `e_M = +1` if the middle strand meets `tm` before `mb`, and `e_B = +1` if
//! the bottom strand meets `tb` before `mb`. Three oriented lines bounding a
//! triangle realize the pattern iff
//! `e_T e_M = sgn(tb) sgn(mb)` and `e_T e_B = sgn(tm) sgn(mb)`.
//! The move reverses each of the three adjacent pairs.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::gauss::{PassToken, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move site does not match the diagram")]
    StaleSite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    R1Remove,
    R1Insert,
    R2Remove,
    R2Insert,
    R3,
}

/// Where and how a move applies. Positions index the pass sequence; a pair
/// "at `p`" occupies `p` and `(p + 1) mod len`. A gap `g` is the slot just
/// before pass `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSite {
    R1Remove {
        at: usize,
        crossing: u32,
    },
    R1Insert {
        gap: usize,
        over_first: bool,
        sign: Sign,
    },
    /// Over passes at `over_at`, under passes at `under_at`.
    R2Remove {
        over_at: usize,
        under_at: usize,
        crossings: (u32, u32),
    },
    /// Inserts `O x O y` at `over_gap` and `U x U y` (parallel) or `U y U x`
    /// at `under_gap`; `x` gets `sign`, `y` the opposite. When both gaps
    /// coincide `overs_first` orders the two groups.
    R2Insert {
        over_gap: usize,
        under_gap: usize,
        parallel: bool,
        sign: Sign,
        overs_first: bool,
    },
    /// Pairs of the top, middle and bottom strands; crossings `[tm, tb, mb]`.
    R3 {
        top: usize,
        middle: usize,
        bottom: usize,
        crossings: [u32; 3],
    },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R1Insert { .. } => MoveKind::R1Insert,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R2Insert { .. } => MoveKind::R2Insert,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    /// Change in crossing count.
    pub fn crossing_delta(&self) -> isize {
        match self.kind() {
            MoveKind::R1Remove => -1,
            MoveKind::R1Insert => 1,
            MoveKind::R2Remove => -2,
            MoveKind::R2Insert => 2,
            MoveKind::R3 => 0,
        }
    }

    /// Pass positions (or gaps, for insertions) the rewrite touches.
    pub fn positions(&self) -> Vec<usize> {
        match *self {
            MoveSite::R1Remove { at, .. } => alloc::vec![at],
            MoveSite::R1Insert { gap, .. } => alloc::vec![gap],
            MoveSite::R2Remove { over_at, under_at, .. } => alloc::vec![over_at, under_at],
            MoveSite::R2Insert { over_gap, under_gap, .. } => alloc::vec![over_gap, under_gap],
            MoveSite::R3 { top, middle, bottom, .. } => alloc::vec![top, middle, bottom],
        }
    }
}

fn next(p: usize, n: usize) -> usize {
    (p + 1) % n
}

/// Starting position of the adjacent pair `{p, q}`, if they are adjacent.
fn pair_start(p: usize, q: usize, n: usize) -> Option<usize> {
    if next(p, n) == q {
        Some(p)
    } else if next(q, n) == p {
        Some(q)
    } else {
        None
    }
}

fn pos(d: &Diagram, id: u32, role: Role) -> usize {
    let c = d.crossing(id).expect("crossing present");
    match role {
        Role::Over => c.over,
        Role::Under => c.under,
    }
}

fn sign_of(d: &Diagram, id: u32) -> i64 {
    d.crossing(id).expect("crossing present").sign.value()
}

fn gap_count(d: &Diagram) -> usize {
    d.pass_count().max(1)
}

pub fn enumerate_removals(d: &Diagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let passes = d.passes();
    let n = passes.len();
    // R1: with two passes both orderings name the same kink
    let r1_span = if n == 2 { 1 } else { n };
    for at in 0..r1_span {
        let (a, b) = (passes[at], passes[next(at, n)]);
        if a.crossing == b.crossing {
            out.push(MoveSite::R1Remove { at, crossing: a.crossing });
        }
    }
    if n < 4 {
        return out;
    }
    for over_at in 0..n {
        let (a, b) = (passes[over_at], passes[next(over_at, n)]);
        if a.role != Role::Over || b.role != Role::Over || a.crossing == b.crossing || a.sign == b.sign {
            continue;
        }
        let (ux, uy) = (pos(d, a.crossing, Role::Under), pos(d, b.crossing, Role::Under));
        if let Some(under_at) = pair_start(ux, uy, n) {
            out.push(MoveSite::R2Remove { over_at, under_at, crossings: (a.crossing, b.crossing) });
        }
    }
    out
}

pub fn enumerate_r3(d: &Diagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let passes = d.passes();
    let n = passes.len();
    if n < 6 {
        return out;
    }
    for top in 0..n {
        let (a, b) = (passes[top], passes[next(top, n)]);
        if a.role != Role::Over || b.role != Role::Over || a.crossing == b.crossing {
            continue;
        }
        for (tm, tb) in [(a.crossing, b.crossing), (b.crossing, a.crossing)] {
            let u_tm = pos(d, tm, Role::Under);
            for r in [(u_tm + n - 1) % n, next(u_tm, n)] {
                let mid = passes[r];
                if mid.role != Role::Over || mid.crossing == tm || mid.crossing == tb {
                    continue;
                }
                let mb = mid.crossing;
                let middle = pair_start(u_tm, r, n).expect("neighbors are adjacent");
                let (u_tb, u_mb) = (pos(d, tb, Role::Under), pos(d, mb, Role::Under));
                let Some(bottom) = pair_start(u_tb, u_mb, n) else { continue };
                let e_t = if a.crossing == tm { 1 } else { -1 };
                let e_m = if middle == u_tm { 1 } else { -1 };
                let e_b = if bottom == u_tb { 1 } else { -1 };
                let (s_tm, s_tb, s_mb) = (sign_of(d, tm), sign_of(d, tb), sign_of(d, mb));
                if e_t * e_m == s_tb * s_mb && e_t * e_b == s_tm * s_mb {
                    let site = MoveSite::R3 { top, middle, bottom, crossings: [tm, tb, mb] };
                    if !out.contains(&site) {
                        out.push(site);
                    }
                }
            }
        }
    }
    out
}

pub fn enumerate_insertions(d: &Diagram) -> Vec<MoveSite> {
    let gaps = gap_count(d);
    let mut out = Vec::new();
    for gap in 0..gaps {
        for over_first in [true, false] {
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(MoveSite::R1Insert { gap, over_first, sign });
            }
        }
    }
    for over_gap in 0..gaps {
        for under_gap in 0..gaps {
            let orders: &[bool] = if over_gap == under_gap { &[true, false] } else { &[true] };
            for &overs_first in orders {
                for parallel in [true, false] {
                    for sign in [Sign::Plus, Sign::Minus] {
                        out.push(MoveSite::R2Insert { over_gap, under_gap, parallel, sign, overs_first });
                    }
                }
            }
        }
    }
    out
}

/// Every applicable move: removals, RIII triangles and insertions.
pub fn enumerate_moves(d: &Diagram) -> Vec<MoveSite> {
    let mut out = enumerate_removals(d);
    out.extend(enumerate_r3(d));
    out.extend(enumerate_insertions(d));
    out
}

fn fresh_id(d: &Diagram) -> u32 {
    d.crossing_ids().max().unwrap_or(0) + 1
}

/// Places `groups` (gap, tokens) into the pass sequence; groups sharing a
/// gap keep their given order.
fn insert_at_gaps(passes: &[PassToken], groups: &[(usize, &[PassToken])]) -> Vec<PassToken> {
    let mut out = Vec::with_capacity(passes.len() + groups.iter().map(|g| g.1.len()).sum::<usize>());
    for i in 0..passes.len().max(1) {
        for (gap, tokens) in groups {
            if *gap == i {
                out.extend_from_slice(tokens);
            }
        }
        if let Some(t) = passes.get(i) {
            out.push(*t);
        }
    }
    out
}

fn remove_positions(passes: &[PassToken], drop: &[usize]) -> Vec<PassToken> {
    passes.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, t)| *t).collect()
}

pub fn apply(d: &Diagram, m: &MoveSite) -> Result<Diagram, MoveError> {
    let passes = d.passes();
    let n = passes.len();
    let tokens = match *m {
        MoveSite::R1Remove { at, .. } | MoveSite::R2Remove { over_at: at, .. } | MoveSite::R3 { top: at, .. } => {
            let valid = at < n
                && match m.kind() {
                    MoveKind::R3 => enumerate_r3(d).contains(m),
                    _ => enumerate_removals(d).contains(m),
                };
            if !valid {
                return Err(MoveError::StaleSite);
            }
            match *m {
                MoveSite::R1Remove { at, .. } => remove_positions(passes, &[at, next(at, n)]),
                MoveSite::R2Remove { over_at, under_at, .. } => {
                    remove_positions(passes, &[over_at, next(over_at, n), under_at, next(under_at, n)])
                }
                MoveSite::R3 { top, middle, bottom, .. } => {
                    let mut out = passes.to_vec();
                    for p in [top, middle, bottom] {
                        out.swap(p, next(p, n));
                    }
                    out
                }
                _ => unreachable!(),
            }
        }
        MoveSite::R1Insert { gap, over_first, sign } => {
            if gap >= gap_count(d) {
                return Err(MoveError::StaleSite);
            }
            let id = fresh_id(d);
            let (o, u) = (PassToken::new(Role::Over, id, sign), PassToken::new(Role::Under, id, sign));
            let kink = if over_first { [o, u] } else { [u, o] };
            insert_at_gaps(passes, &[(gap, &kink)])
        }
        MoveSite::R2Insert { over_gap, under_gap, parallel, sign, overs_first } => {
            let gaps = gap_count(d);
            if over_gap >= gaps || under_gap >= gaps || (over_gap != under_gap && !overs_first) {
                return Err(MoveError::StaleSite);
            }
            let x = fresh_id(d);
            let y = x + 1;
            let overs = [PassToken::new(Role::Over, x, sign), PassToken::new(Role::Over, y, -sign)];
            let (ux, uy) = (PassToken::new(Role::Under, x, sign), PassToken::new(Role::Under, y, -sign));
            let unders = if parallel { [ux, uy] } else { [uy, ux] };
            if overs_first {
                insert_at_gaps(passes, &[(over_gap, &overs), (under_gap, &unders)])
            } else {
                insert_at_gaps(passes, &[(under_gap, &unders), (over_gap, &overs)])
            }
        }
    };
    Ok(Diagram::from_tokens(tokens))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScrambleConfig {
    /// Insertions never push the crossing count above this.
    pub crossing_cap: usize,
}

impl Default for ScrambleConfig {
    fn default() -> Self {
        ScrambleConfig { crossing_cap: 12 }
    }
}

/// Applies `steps` random moves. Each step picks a move kind uniformly among
/// the kinds that have a site, then a site of that kind uniformly.
pub fn scramble(d: &Diagram, steps: usize, seed: u64) -> Diagram {
    scramble_with(d, steps, seed, ScrambleConfig::default()).0
}

pub fn scramble_with(d: &Diagram, steps: usize, seed: u64, config: ScrambleConfig) -> (Diagram, Vec<MoveSite>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let room = config.crossing_cap.saturating_sub(current.crossing_count()) as isize;
        let mut by_kind: Vec<Vec<MoveSite>> = Vec::new();
        let mut sites = enumerate_moves(&current);
        sites.retain(|m| m.crossing_delta() <= room);
        for kind in [MoveKind::R1Remove, MoveKind::R1Insert, MoveKind::R2Remove, MoveKind::R2Insert, MoveKind::R3] {
            let group: Vec<_> = sites.iter().filter(|m| m.kind() == kind).copied().collect();
            if !group.is_empty() {
                by_kind.push(group);
            }
        }
        let Some(group) = by_kind.choose(&mut rng) else { break };
        let site = group[rng.gen_range(0..group.len())];
        current = apply(&current, &site).expect("enumerated site applies");
        trace.push(site);
    }
    (current, trace)
}
