//! Crossing indices, the affine index polynomial, n-writhes, n-dwrithes and
//! the two-variable `L^n` / `F^n` families built from smoothings.

use alloc::vec::Vec;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::gauss::Sign;
use crate::poly::{LaurentPoly, LaurentPoly2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("n-writhe is undefined for n = 0")]
    ZeroN,
    #[error("n must be positive, got {0}")]
    NonPositiveN(i64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingIndex {
    pub crossing: u32,
    pub sign: Sign,
    pub index: i64,
}

/// `Ind(c) = sgn(c) * (a - b - 1)` for every crossing, ordered by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexTable {
    entries: Vec<CrossingIndex>,
}

impl IndexTable {
    pub fn new(d: &Diagram) -> Result<IndexTable, InvariantError> {
        let coloring = d.cheng_coloring()?;
        let entries = d
            .crossings()
            .map(|c| {
                let (a, b) = d.incoming_labels(&coloring, c.id)?;
                Ok(CrossingIndex { crossing: c.id, sign: c.sign, index: c.sign.value() * (a - b - 1) })
            })
            .collect::<Result<_, DiagramError>>()?;
        Ok(IndexTable { entries })
    }

    pub fn entries(&self) -> &[CrossingIndex] {
        &self.entries
    }

    pub fn index_of(&self, crossing: u32) -> Option<i64> {
        self.entries.iter().find(|e| e.crossing == crossing).map(|e| e.index)
    }

    pub fn max_abs_index(&self) -> i64 {
        self.entries.iter().map(|e| e.index.abs()).max().unwrap_or(0)
    }

    pub fn affine_index_polynomial(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for e in &self.entries {
            let s = e.sign.value();
            p.add_term(e.index, s);
            p.add_term(0, -s);
        }
        p
    }

    pub fn n_writhe(&self, n: i64) -> Result<i64, InvariantError> {
        if n == 0 {
            return Err(InvariantError::ZeroN);
        }
        Ok(self.entries.iter().filter(|e| e.index == n).map(|e| e.sign.value()).sum())
    }

    pub fn n_dwrithe(&self, n: i64) -> Result<i64, InvariantError> {
        if n < 1 {
            return Err(InvariantError::NonPositiveN(n));
        }
        Ok(self.n_writhe(n)? - self.n_writhe(-n)?)
    }
}

/// A diagram's index table together with the index tables of all of its
/// smoothings, which is everything `L^n` and `F^n` need.
#[derive(Debug, Clone)]
pub struct Evaluation {
    table: IndexTable,
    smoothings: Vec<(u32, IndexTable)>,
}

impl Evaluation {
    pub fn new(d: &Diagram) -> Result<Evaluation, InvariantError> {
        let table = IndexTable::new(d)?;
        let smoothings = d
            .crossing_ids()
            .map(|id| {
                let s = d.smooth_against_orientation(id)?;
                Ok((id, IndexTable::new(&s.result)?))
            })
            .collect::<Result<_, InvariantError>>()?;
        Ok(Evaluation { table, smoothings })
    }

    pub fn table(&self) -> &IndexTable {
        &self.table
    }

    pub fn smoothing_tables(&self) -> &[(u32, IndexTable)] {
        &self.smoothings
    }

    /// `max(1, max |Ind|)` over the diagram and all of its smoothings.
    pub fn index_bound(&self) -> i64 {
        self.smoothings
            .iter()
            .map(|(_, t)| t.max_abs_index())
            .chain(core::iter::once(self.table.max_abs_index()))
            .max()
            .unwrap_or(0)
            .max(1)
    }

    pub fn affine_index_polynomial(&self) -> LaurentPoly {
        self.table.affine_index_polynomial()
    }

    /// `(crossing, sgn, Ind, dwrithe of D_c)` for every crossing.
    fn per_crossing(&self, n: i64) -> Result<Vec<(Sign, i64, i64)>, InvariantError> {
        self.table
            .entries()
            .iter()
            .zip(&self.smoothings)
            .map(|(e, (id, t))| {
                debug_assert_eq!(e.crossing, *id);
                Ok((e.sign, e.index, t.n_dwrithe(n)?))
            })
            .collect()
    }

    /// `L^n = sum sgn(c) (t^Ind(c) l^|dJ_n(D_c)| - l^|dJ_n(D)|)`.
    pub fn l_polynomial(&self, n: i64) -> Result<LaurentPoly2, InvariantError> {
        let base = self.table.n_dwrithe(n)?.abs();
        let mut p = LaurentPoly2::zero();
        for (sign, ind, dw) in self.per_crossing(n)? {
            let s = sign.value();
            p.add_term(ind, dw.abs(), s);
            p.add_term(0, base, -s);
        }
        Ok(p)
    }

    /// `F^n`: the first two sums use signed smoothing dwrithes as `l`
    /// exponents; membership in `T_n` compares absolute values.
    pub fn f_polynomial(&self, n: i64) -> Result<LaurentPoly2, InvariantError> {
        let base = self.table.n_dwrithe(n)?;
        let mut p = LaurentPoly2::zero();
        for (sign, ind, dw) in self.per_crossing(n)? {
            let s = sign.value();
            p.add_term(ind, dw, s);
            if dw.abs() == base.abs() {
                p.add_term(0, dw, -s);
            } else {
                p.add_term(0, base, -s);
            }
        }
        Ok(p)
    }
}

pub fn index_table(d: &Diagram) -> Result<IndexTable, InvariantError> {
    IndexTable::new(d)
}

pub fn affine_index_polynomial(d: &Diagram) -> Result<LaurentPoly, InvariantError> {
    Ok(IndexTable::new(d)?.affine_index_polynomial())
}

pub fn n_writhe(d: &Diagram, n: i64) -> Result<i64, InvariantError> {
    if n == 0 {
        return Err(InvariantError::ZeroN);
    }
    let table = IndexTable::new(d)?;
    let j = table.n_writhe(n)?;
    debug_assert_eq!(j, table.affine_index_polynomial().coeff(n));
    Ok(j)
}

pub fn n_dwrithe(d: &Diagram, n: i64) -> Result<i64, InvariantError> {
    if n < 1 {
        return Err(InvariantError::NonPositiveN(n));
    }
    IndexTable::new(d)?.n_dwrithe(n)
}

pub fn l_polynomial(d: &Diagram, n: i64) -> Result<LaurentPoly2, InvariantError> {
    if n < 1 {
        return Err(InvariantError::NonPositiveN(n));
    }
    Evaluation::new(d)?.l_polynomial(n)
}

pub fn f_polynomial(d: &Diagram, n: i64) -> Result<LaurentPoly2, InvariantError> {
    if n < 1 {
        return Err(InvariantError::NonPositiveN(n));
    }
    Evaluation::new(d)?.f_polynomial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    fn vt() -> LaurentPoly {
        LaurentPoly::from_terms([(-1, 1), (0, -2), (1, 1)])
    }

    #[test]
    fn virtual_trefoil_indices() {
        let t = index_table(&d("O1+O2+U1+U2+")).unwrap();
        assert_eq!(t.index_of(1), Some(1));
        assert_eq!(t.index_of(2), Some(-1));
    }

    #[test]
    fn classical_trefoil_indices_vanish() {
        let t = index_table(&d("O1+U2+O3+U1+O2+U3+")).unwrap();
        assert!(t.entries().iter().all(|e| e.index == 0));
        assert!(affine_index_polynomial(&d("O1+U2+O3+U1+O2+U3+")).unwrap().is_zero());
    }

    #[test]
    fn affine_index_polynomial_values() {
        assert_eq!(affine_index_polynomial(&d("O1+O2+U1+U2+")).unwrap(), vt());
        assert_eq!(affine_index_polynomial(&d("O1+O2+U1+U2+")).unwrap().to_string(), "t^-1 - 2 + t");
        assert!(affine_index_polynomial(&Diagram::unknot()).unwrap().is_zero());
    }

    #[test]
    fn writhes_of_virtual_trefoil() {
        let v = d("O1+O2+U1+U2+");
        assert_eq!(n_writhe(&v, 1), Ok(1));
        assert_eq!(n_writhe(&v, -1), Ok(1));
        assert_eq!(n_writhe(&v, 2), Ok(0));
        assert_eq!(n_writhe(&v, 0), Err(InvariantError::ZeroN));
        assert_eq!(n_dwrithe(&v, 1), Ok(0));
        assert_eq!(n_dwrithe(&v, 0), Err(InvariantError::NonPositiveN(0)));
        let classical = d("O1+U2+O3+U1+O2+U3+");
        for n in 1..5 {
            assert_eq!(n_writhe(&classical, n), Ok(0));
            assert_eq!(n_writhe(&Diagram::unknot(), -n), Ok(0));
        }
    }

    #[test]
    fn l_and_f_of_virtual_trefoil() {
        let v = d("O1+O2+U1+U2+");
        for n in 1..=4 {
            assert_eq!(l_polynomial(&v, n).unwrap(), vt().to_two_variable());
            assert_eq!(f_polynomial(&v, n).unwrap(), vt().to_two_variable());
        }
        assert!(l_polynomial(&Diagram::unknot(), 1).unwrap().is_zero());
        assert!(f_polynomial(&Diagram::unknot(), 2).unwrap().is_zero());
        assert_eq!(l_polynomial(&v, 0), Err(InvariantError::NonPositiveN(0)));
        assert_eq!(f_polynomial(&v, -1), Err(InvariantError::NonPositiveN(-1)));
    }

    #[test]
    fn index_bound_is_at_least_one() {
        assert_eq!(Evaluation::new(&Diagram::unknot()).unwrap().index_bound(), 1);
        assert_eq!(Evaluation::new(&d("O1+O2+U1+U2+")).unwrap().index_bound(), 1);
    }

    #[test]
    fn mirror_of_virtual_trefoil_negates() {
        let v = d("O1+O2+U1+U2+");
        assert_eq!(affine_index_polynomial(&v.mirror()).unwrap(), -vt());
    }
}
