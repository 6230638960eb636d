//! Sparse Laurent polynomials with integer coefficients in `t` and in
//! `(t, l)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

/// Polynomial in `t` and `t^-1`. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn is_palindromic(&self) -> bool {
        self.terms.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Embeds as a polynomial in `(t, l)` with no `l` dependence.
    pub fn to_two_variable(&self) -> LaurentPoly2 {
        LaurentPoly2::from_terms(self.terms().map(|(e, c)| (e, 0, c)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render(f, self.terms().map(|(e, c)| ([('t', e), ('l', 0)], c)))
    }
}

/// Polynomial in `t^±1` and `l^±1`, keyed by `(t exponent, l exponent)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        LaurentPoly2::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64, i64)>) -> Self {
        let mut p = LaurentPoly2::zero();
        for (te, le, c) in terms {
            p.add_term(te, le, c);
        }
        p
    }

    pub fn add_term(&mut self, t_exp: i64, l_exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let key = (t_exp, l_exp);
        let c = self.terms.entry(key).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, t_exp: i64, l_exp: i64) -> i64 {
        self.terms.get(&(t_exp, l_exp)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(t exponent, l exponent, coefficient)`, ascending in `t` then `l`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.terms.iter().map(|(&(te, le), &c)| (te, le, c))
    }

    pub fn triples(&self) -> Vec<(i64, i64, i64)> {
        self.terms().collect()
    }

    /// `l -> 1`.
    pub fn at_l_one(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(te, _, c)| (te, c)))
    }

    /// `t -> t^-1`.
    pub fn invert_t(&self) -> Self {
        LaurentPoly2::from_terms(self.terms().map(|(te, le, c)| (-te, le, c)))
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, rhs: &LaurentPoly2) {
        for (te, le, c) in rhs.terms() {
            self.add_term(te, le, c);
        }
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render(f, self.terms().map(|(te, le, c)| ([('t', te), ('l', le)], c)))
    }
}

// `t^-1 - 2 + t`, `2*t^-2*l^2 - l`, `0`.
fn render<const N: usize>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = ([(char, i64); N], i64)>,
) -> fmt::Result {
    let mut first = true;
    for (vars, c) in terms {
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c < 0 { " - " } else { " + " })?;
        }
        first = false;
        let mag = c.unsigned_abs();
        let mut wrote = false;
        if mag != 1 || vars.iter().all(|&(_, e)| e == 0) {
            write!(f, "{mag}")?;
            wrote = true;
        }
        for &(v, e) in vars.iter().filter(|&&(_, e)| e != 0) {
            if wrote {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
            wrote = true;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn zero_coefficients_vanish() {
        let mut a = p(&[(1, 1), (-1, 1), (0, -2)]);
        a += &p(&[(1, -1)]);
        assert_eq!(a, p(&[(-1, 1), (0, -2)]));
        assert_eq!(a.coeff(1), 0);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn palindromic_and_inversion() {
        let vt = p(&[(-1, 1), (0, -2), (1, 1)]);
        assert!(vt.is_palindromic());
        let q = p(&[(2, 1), (0, -2), (-2, 1)]);
        assert_eq!(q.invert_variable(), q);
        assert!(!p(&[(1, 1), (0, -1)]).is_palindromic());
        assert_eq!(vt.eval_at_one(), 0);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[(-1, 1), (0, -2), (1, 1)]).to_string(), "t^-1 - 2 + t");
        assert_eq!(p(&[(-1, 2), (0, -4), (1, 2)]).to_string(), "2*t^-1 - 4 + 2*t");
        assert_eq!(p(&[(-2, -1), (3, 1)]).to_string(), "-t^-2 + t^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p(&[(0, -1)]).to_string(), "-1");
        let q = LaurentPoly2::from_terms([(-2, 2, 1), (0, 0, -3), (0, -1, 1), (1, 1, -2)]);
        assert_eq!(q.to_string(), "t^-2*l^2 + l^-1 - 3 - 2*t*l");
    }

    #[test]
    fn two_variable_specialization() {
        let q = LaurentPoly2::from_terms([(1, 3, 1), (1, 0, 1), (0, 2, -2)]);
        assert_eq!(q.at_l_one(), p(&[(1, 2), (0, -2)]));
        assert_eq!(p(&[(1, 4)]).to_two_variable().triples(), [(1, 0, 4)]);
    }
}
