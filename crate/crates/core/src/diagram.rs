//! Oriented virtual knot diagrams built from Gauss codes.
//!
//! Arc `i` runs from pass `i` to pass `i + 1` (cyclically). The empty
//! diagram has one closed arc.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::gauss::{GaussError, PassToken, RawCode, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {0} is not in the diagram")]
    UnknownCrossing(u32),
    #[error("Cheng coloring relation fails at crossing {crossing}")]
    InternalInconsistency { crossing: u32 },
}

/// Positions and sign of one classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub id: u32,
    pub sign: Sign,
    pub over: usize,
    pub under: usize,
}

impl Crossing {
    /// Position of the pass whose label goes `a -> a - 1`: the over pass of
    /// a positive crossing, the under pass of a negative one.
    pub fn decrementing_pass(&self) -> usize {
        match self.sign {
            Sign::Plus => self.over,
            Sign::Minus => self.under,
        }
    }

    pub fn incrementing_pass(&self) -> usize {
        match self.sign {
            Sign::Plus => self.under,
            Sign::Minus => self.over,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    code: RawCode,
    crossings: BTreeMap<u32, Crossing>,
}

impl Diagram {
    pub fn build(code: &RawCode) -> Diagram {
        let mut partial: BTreeMap<u32, (Option<usize>, Option<usize>, Sign)> = BTreeMap::new();
        for (i, t) in code.tokens().iter().enumerate() {
            let e = partial.entry(t.crossing).or_insert((None, None, t.sign));
            match t.role {
                Role::Over => e.0 = Some(i),
                Role::Under => e.1 = Some(i),
            }
        }
        let crossings = partial
            .into_iter()
            .map(|(id, (o, u, sign))| {
                let (over, under) = (o.expect("validated code"), u.expect("validated code"));
                (id, Crossing { id, sign, over, under })
            })
            .collect();
        Diagram { code: code.clone(), crossings }
    }

    pub fn parse(text: &str) -> Result<Diagram, GaussError> {
        Ok(Diagram::build(&RawCode::parse(text)?))
    }

    pub fn unknot() -> Diagram {
        Diagram::build(&RawCode::unknot())
    }

    pub(crate) fn from_tokens(tokens: Vec<PassToken>) -> Diagram {
        Diagram::build(&RawCode::new_unchecked(tokens))
    }

    pub fn code(&self) -> &RawCode {
        &self.code
    }

    pub fn passes(&self) -> &[PassToken] {
        self.code.tokens()
    }

    pub fn pass_count(&self) -> usize {
        self.code.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.code.len().max(1)
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Crossing> {
        self.crossings.values()
    }

    pub fn crossing(&self, id: u32) -> Result<&Crossing, DiagramError> {
        self.crossings.get(&id).ok_or(DiagramError::UnknownCrossing(id))
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.crossings.keys().copied()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.values().map(|c| c.sign.value()).sum()
    }

    /// Arc entering pass `p`.
    pub fn arc_into(&self, p: usize) -> usize {
        let n = self.pass_count();
        (p + n - 1) % n
    }

    /// Switches every crossing: over and under exchange, signs flip.
    pub fn mirror(&self) -> Diagram {
        let tokens =
            self.passes().iter().map(|t| PassToken::new(t.role.swapped(), t.crossing, t.sign.flipped())).collect();
        Diagram::from_tokens(tokens)
    }

    /// Reverses the orientation. Both strands at every crossing reverse,
    /// so signs and roles are kept.
    pub fn reverse(&self) -> Diagram {
        let tokens = self.passes().iter().rev().copied().collect();
        Diagram::from_tokens(tokens)
    }

    /// Cheng coloring from the walk formula: the label of an arc is the sum
    /// of the signs of the crossings first met as over passes while walking
    /// once around the knot from that arc.
    pub fn cheng_coloring(&self) -> Result<ChengColoring, DiagramError> {
        let n = self.pass_count();
        if n == 0 {
            return Ok(ChengColoring { labels: alloc::vec![0] });
        }
        let passes = self.passes();
        let mut labels = Vec::with_capacity(n);
        let mut met = BTreeSet::new();
        for arc in 0..n {
            met.clear();
            let mut sum = 0;
            for step in 1..=n {
                let t = &passes[(arc + step) % n];
                if met.insert(t.crossing) && t.role == Role::Over {
                    sum += t.sign.value();
                }
            }
            labels.push(sum);
        }
        let coloring = ChengColoring { labels };
        coloring.check(self)?;
        Ok(coloring)
    }

    /// Incoming labels `(a, b)` at crossing `id`: the `a` strand leaves with
    /// `a - 1`, the `b` strand with `b + 1`.
    pub fn incoming_labels(&self, coloring: &ChengColoring, id: u32) -> Result<(i64, i64), DiagramError> {
        let c = self.crossing(id)?;
        let a = coloring.labels[self.arc_into(c.decrementing_pass())];
        let b = coloring.labels[self.arc_into(c.incrementing_pass())];
        Ok((a, b))
    }

    /// Smoothing against orientation at crossing `id`, oriented so that the
    /// strand leaving the over pass of `id` keeps its direction.
    pub fn smooth_against_orientation(&self, id: u32) -> Result<SmoothedDiagram, DiagramError> {
        self.smooth_with(id, OrientationConvention::OverExitKept)
    }

    /// Smoothing against orientation under an explicit orientation rule.
    ///
    /// With the passes of `id` at positions `i < j`, both passes are deleted
    /// and the block strictly between them is traversed backwards. Crossings
    /// with exactly one pass in the block change sign. Under
    /// `OverExitKept`, when the over pass comes first the result is then
    /// reversed as a whole, which amounts to reversing the other segment.
    pub fn smooth_with(&self, id: u32, convention: OrientationConvention) -> Result<SmoothedDiagram, DiagramError> {
        let c = self.crossing(id)?;
        let (i, j) = if c.over < c.under { (c.over, c.under) } else { (c.under, c.over) };
        let passes = self.passes();
        let block = &passes[i + 1..j];
        let mut inside: BTreeMap<u32, u32> = BTreeMap::new();
        for t in block {
            *inside.entry(t.crossing).or_default() += 1;
        }
        let fix = |t: &PassToken| {
            if inside.get(&t.crossing) == Some(&1) {
                PassToken::new(t.role, t.crossing, t.sign.flipped())
            } else {
                *t
            }
        };
        let mut tokens = Vec::with_capacity(passes.len() - 2);
        tokens.extend(passes[..i].iter().map(fix));
        tokens.extend(block.iter().rev().map(fix));
        tokens.extend(passes[j + 1..].iter().map(fix));
        let outer = convention == OrientationConvention::OverExitKept && c.over < c.under;
        let reversed_segment = if outer {
            tokens.reverse();
            (0..passes.len()).filter(|&k| k < i || k > j).collect()
        } else {
            (i + 1..j).collect()
        };
        Ok(SmoothedDiagram { result: Diagram::from_tokens(tokens), reversed_segment, convention })
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.code.fmt(f)
    }
}

/// Integer labels on arcs, indexed like the arcs of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChengColoring {
    labels: Vec<i64>,
}

impl ChengColoring {
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, arc: usize) -> i64 {
        self.labels[arc]
    }

    /// Checks the local relations at every crossing: the `a` strand leaves
    /// with `a - 1` and the `b` strand with `b + 1`.
    pub fn check(&self, d: &Diagram) -> Result<(), DiagramError> {
        if self.labels.len() != d.arc_count() {
            return Err(DiagramError::InternalInconsistency { crossing: 0 });
        }
        for c in d.crossings() {
            let dec = c.decrementing_pass();
            let inc = c.incrementing_pass();
            let a = self.labels[d.arc_into(dec)];
            let b = self.labels[d.arc_into(inc)];
            if self.labels[dec] != a - 1 || self.labels[inc] != b + 1 {
                return Err(DiagramError::InternalInconsistency { crossing: c.id });
            }
        }
        Ok(())
    }
}

/// Which part of the knot keeps its direction after smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationConvention {
    /// The segment through position 0 keeps its orientation; the block
    /// between the two passes is reversed.
    BasepointSegmentKept,
    /// The strand leaving the over pass of the smoothed crossing keeps its
    /// orientation; the strand leaving the under pass is reversed.
    OverExitKept,
}

impl fmt::Display for OrientationConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BasepointSegmentKept => "basepoint-segment-kept",
            Self::OverExitKept => "over-exit-kept",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothedDiagram {
    pub result: Diagram,
    /// Positions in the source diagram whose traversal was reversed.
    pub reversed_segment: Vec<usize>,
    pub convention: OrientationConvention,
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    #[test]
    fn build_counts() {
        let v = d("O1+O2+U1+U2+");
        assert_eq!((v.crossing_count(), v.arc_count()), (2, 4));
        let u = Diagram::unknot();
        assert_eq!((u.crossing_count(), u.arc_count()), (0, 1));
        let k = d("O1+U1+");
        assert_eq!((k.crossing_count(), k.arc_count()), (1, 2));
    }

    #[test]
    fn unknot_coloring() {
        assert_eq!(Diagram::unknot().cheng_coloring().unwrap().labels(), &[0]);
    }

    #[test]
    fn virtual_trefoil_coloring() {
        let v = d("O1+O2+U1+U2+");
        let col = v.cheng_coloring().unwrap();
        // hand trace, listed from the arc entering O1 (= arc 3)
        let from_o1: Vec<i64> = (0..4).map(|k| col.label((3 + k) % 4)).collect();
        assert_eq!(from_o1, [2, 1, 0, 1]);
        assert_eq!(v.incoming_labels(&col, 1).unwrap(), (2, 0));
        assert_eq!(v.incoming_labels(&col, 2).unwrap(), (1, 1));
        assert_eq!(v.incoming_labels(&col, 3), Err(DiagramError::UnknownCrossing(3)));
    }

    #[test]
    fn classical_trefoil_relations_hold() {
        let t = d("O1+U2+O3+U1+O2+U3+");
        let col = t.cheng_coloring().unwrap();
        col.check(&t).unwrap();
        for id in 1..=3 {
            let (a, b) = t.incoming_labels(&col, id).unwrap();
            assert_eq!(a, b + 1);
        }
    }

    #[test]
    fn kinks_have_a_equal_b_plus_one() {
        for code in ["O1+U1+", "U1+O1+", "O1-U1-", "U1-O1-"] {
            let k = d(code);
            let col = k.cheng_coloring().unwrap();
            let (a, b) = k.incoming_labels(&col, 1).unwrap();
            assert_eq!(a, b + 1, "{code}");
        }
    }

    #[test]
    fn broken_coloring_is_reported() {
        let v = d("O1+O2+U1+U2+");
        let bad = ChengColoring { labels: alloc::vec![0, 0, 0, 0] };
        assert!(matches!(bad.check(&v), Err(DiagramError::InternalInconsistency { .. })));
    }

    #[test]
    fn smoothing_virtual_trefoil() {
        let v = d("O1+O2+U1+U2+");
        let s = v.smooth_with(1, OrientationConvention::BasepointSegmentKept).unwrap();
        assert_eq!(s.result.to_string(), "O2-U2-");
        assert_eq!(s.reversed_segment, [1]);
        let s2 = v.smooth_with(2, OrientationConvention::BasepointSegmentKept).unwrap();
        assert_eq!(s2.result.to_string(), "O1-U1-");
        // over pass of 1 comes first, so the other segment is the reversed one
        let s = v.smooth_against_orientation(1).unwrap();
        assert_eq!(s.result.to_string(), "U2-O2-");
        assert_eq!(s.reversed_segment, [3]);
        assert_eq!(v.smooth_against_orientation(2).unwrap().result.to_string(), "U1-O1-");
        let w = d("U1-O2+O1-U2+");
        // under pass of 1 comes first: same as the basepoint rule
        assert_eq!(
            w.smooth_against_orientation(1).unwrap().result,
            w.smooth_with(1, OrientationConvention::BasepointSegmentKept).unwrap().result
        );
        assert!(v.smooth_against_orientation(9).is_err());
    }

    #[test]
    fn smoothing_a_kink_just_deletes_it() {
        let x = d("O1+U2-O2-U1+O3+U3+");
        let s = x.smooth_with(3, OrientationConvention::BasepointSegmentKept).unwrap();
        assert_eq!(s.result.to_string(), "O1+U2-O2-U1+");
        assert!(s.reversed_segment.is_empty());
        let y = d("O1+U2-O2-U1+U3+O3+");
        assert_eq!(y.smooth_against_orientation(3).unwrap().result.to_string(), "O1+U2-O2-U1+");
        // a kink entered on its over pass leaves the rest of the knot reversed
        assert_eq!(x.smooth_against_orientation(3).unwrap().result, d("O1+U2-O2-U1+").reverse());
    }

    #[test]
    fn smoothing_keeps_sign_when_both_passes_reverse() {
        let x = d("O1+O2-U2-U1+");
        let s = x.smooth_with(1, OrientationConvention::BasepointSegmentKept).unwrap();
        // block O2- U2- reversed, both passes inside
        assert_eq!(s.result.to_string(), "U2-O2-");
        assert_eq!(x.smooth_against_orientation(1).unwrap().result.to_string(), "O2-U2-");
    }

    #[test]
    fn mirror_and_reverse() {
        let v = d("O1+O2-U1+U2-");
        assert_eq!(v.mirror().to_string(), "U1-U2+O1-O2+");
        assert_eq!(v.reverse().to_string(), "U2-U1+O2-O1+");
        assert_eq!(v.mirror().mirror(), v);
    }
}
