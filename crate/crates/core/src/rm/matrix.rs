use std::ops::Mul;

use super::bivar::BivarPoly;
use super::laurent::LaurentInt;
use crate::knot::{Generator, GroupWord};

/// Quotient of two bivariate polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: BivarPoly,
    pub den: BivarPoly,
}

impl RationalFunction {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Self {
        RationalFunction { num, den }
    }

    /// Cancels the denominator when it divides the numerator exactly and has
    /// a unit leading coefficient.
    pub fn reduced(self) -> Self {
        if let Some((q, r)) = self.num.div_rem_monic(&self.den) {
            if r.is_zero() {
                return RationalFunction { num: q, den: BivarPoly::one() };
            }
        }
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == BivarPoly::one()
    }

    /// Exact equality as rational functions.
    pub fn same_as(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }
}

/// 2x2 matrix over `Z[M, M^-1, x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix2 {
    pub e: [[BivarPoly; 2]; 2],
}

impl SymMatrix2 {
    pub fn new(e11: BivarPoly, e12: BivarPoly, e21: BivarPoly, e22: BivarPoly) -> Self {
        SymMatrix2 { e: [[e11, e12], [e21, e22]] }
    }

    pub fn identity() -> Self {
        SymMatrix2::new(BivarPoly::one(), BivarPoly::zero(), BivarPoly::zero(), BivarPoly::one())
    }

    pub fn det(&self) -> BivarPoly {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    pub fn trace(&self) -> BivarPoly {
        &self.e[0][0] + &self.e[1][1]
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Self {
        SymMatrix2::new(self.e[1][1].clone(), -&self.e[0][1], -&self.e[1][0], self.e[0][0].clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(SymMatrix2::identity(), |acc, _| &acc * self)
    }

    pub fn reflect_m(&self) -> Self {
        let r = |p: &BivarPoly| p.reflect_m();
        SymMatrix2::new(r(&self.e[0][0]), r(&self.e[0][1]), r(&self.e[1][0]), r(&self.e[1][1]))
    }
}

impl Mul for &SymMatrix2 {
    type Output = SymMatrix2;
    fn mul(self, rhs: &SymMatrix2) -> SymMatrix2 {
        let a = &self.e;
        let b = &rhs.e;
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        SymMatrix2::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }
}

/// The meridian pair `S = [[M, 1], [0, 1/M]]`,
/// `T = [[M, 0], [2 - M^2 - M^-2 - x, 1/M]]`, normalized so that
/// `x = 2 - tr(ST)`.
#[derive(Debug, Clone)]
pub struct MeridianPair {
    pub s: SymMatrix2,
    pub t: SymMatrix2,
    pub s_inv: SymMatrix2,
    pub t_inv: SymMatrix2,
}

impl MeridianPair {
    pub fn new() -> Self {
        let m = |e| BivarPoly::monomial_m(e, 1);
        let t21 = &BivarPoly::constant(LaurentInt::from_terms(&[(0, 2), (2, -1), (-2, -1)])) - &BivarPoly::x();
        let s = SymMatrix2::new(m(1), BivarPoly::one(), BivarPoly::zero(), m(-1));
        let t = SymMatrix2::new(m(1), BivarPoly::zero(), t21, m(-1));
        MeridianPair { s_inv: s.adjugate(), t_inv: t.adjugate(), s, t }
    }

    /// `rho(word)` as a product of the generator matrices.
    pub fn word(&self, w: &GroupWord) -> SymMatrix2 {
        w.letters().iter().fold(SymMatrix2::identity(), |acc, l| {
            let g = match (l.gen, l.exp > 0) {
                (Generator::S, true) => &self.s,
                (Generator::S, false) => &self.s_inv,
                (Generator::T, true) => &self.t,
                (Generator::T, false) => &self.t_inv,
            };
            &acc * g
        })
    }
}

impl Default for MeridianPair {
    fn default() -> Self {
        MeridianPair::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_have_unit_determinant() {
        let mp = MeridianPair::new();
        for g in [&mp.s, &mp.t, &mp.s_inv, &mp.t_inv] {
            assert_eq!(g.det(), BivarPoly::one());
        }
        assert_eq!(&mp.s * &mp.s_inv, SymMatrix2::identity());
        assert_eq!(&mp.t * &mp.t_inv, SymMatrix2::identity());
    }

    #[test]
    fn x_is_two_minus_trace_st() {
        let mp = MeridianPair::new();
        let st = &mp.s * &mp.t;
        let two = BivarPoly::monomial_m(0, 2);
        assert_eq!(&two - &st.trace(), BivarPoly::x());
    }

    #[test]
    fn word_products_stay_in_sl2() {
        let mp = MeridianPair::new();
        let w: GroupWord = "t s^-1 t s^-1 t^-1 s t^-1 s".parse().unwrap();
        assert_eq!(mp.word(&w).det(), BivarPoly::one());
        assert_eq!(mp.word(&w.concat(&w.inverse())), SymMatrix2::identity());
    }
}
