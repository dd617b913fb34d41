use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Integer};
use serde::{Deserialize, Serialize};

use super::laurent::{LaurentInt, MPowers};
use crate::error::{Error, Result};

/// Polynomial in `x` whose coefficients are integer Laurent polynomials in
/// `M`. Index `j` of `xcoeffs` holds the coefficient of `x^j`; the leading
/// entry is always nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    xcoeffs: Vec<LaurentInt>,
}

impl BivarPoly {
    pub fn new(mut xcoeffs: Vec<LaurentInt>) -> Self {
        while xcoeffs.last().is_some_and(|c| c.is_zero()) {
            xcoeffs.pop();
        }
        BivarPoly { xcoeffs }
    }

    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn constant(c: LaurentInt) -> Self {
        BivarPoly::new(vec![c])
    }

    pub fn one() -> Self {
        BivarPoly::constant(LaurentInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        BivarPoly::new(vec![LaurentInt::zero(), LaurentInt::one()])
    }

    pub fn monomial_m(exp: i64, c: i64) -> Self {
        BivarPoly::constant(LaurentInt::monomial(exp, c))
    }

    pub fn is_zero(&self) -> bool {
        self.xcoeffs.is_empty()
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn x_degree(&self) -> Option<usize> {
        self.xcoeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[LaurentInt] {
        &self.xcoeffs
    }

    pub fn coeff(&self, j: usize) -> LaurentInt {
        self.xcoeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&LaurentInt> {
        self.xcoeffs.last()
    }

    /// Smallest and largest `M`-exponent over all coefficients.
    pub fn m_range(&self) -> Option<(i64, i64)> {
        let lows = self.xcoeffs.iter().filter_map(|c| c.low());
        let highs = self.xcoeffs.iter().filter_map(|c| c.high());
        Some((lows.min()?, highs.max()?))
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentInt) -> LaurentInt) -> Self {
        BivarPoly::new(self.xcoeffs.iter().map(f).collect())
    }

    /// Multiplies every coefficient by `M^k`.
    pub fn shift_m(&self, k: i64) -> Self {
        self.map_coeffs(|c| c.shift(k))
    }

    /// Substitutes `M -> 1/M`.
    pub fn reflect_m(&self) -> Self {
        self.map_coeffs(LaurentInt::reflect)
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        self.map_coeffs(|a| a * c)
    }

    pub fn derivative_x(&self) -> Self {
        BivarPoly::new(
            self.xcoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Integer::from(j)))
                .collect(),
        )
    }

    pub fn derivative_m(&self) -> Self {
        self.map_coeffs(LaurentInt::derivative)
    }

    /// Division by a divisor whose leading `x`-coefficient is a unit
    /// `+-M^k`. Returns `(quotient, remainder)` with `deg remainder < deg d`.
    pub fn div_rem_monic(&self, d: &BivarPoly) -> Option<(BivarPoly, BivarPoly)> {
        let dd = d.x_degree()?;
        let lead = d.leading()?;
        let (lo, hi) = (lead.low()?, lead.high()?);
        if lo != hi || lead.coeff(lo).clone().abs() != 1 {
            return None;
        }
        let lead_inv = LaurentInt::monomial(-lo, lead.coeff(lo));
        let mut rem = self.xcoeffs.clone();
        if rem.len() <= dd {
            return Some((BivarPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![LaurentInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let t = &rem[i + dd] * &lead_inv;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.xcoeffs.iter().enumerate() {
                rem[i + j] -= &(&t * dc);
            }
            q[i] = t;
        }
        Some((BivarPoly::new(q), BivarPoly::new(rem)))
    }

    /// Numeric coefficients `[a_0(M), ..., a_d(M)]` at the `M` of `powers`.
    pub fn eval_coeffs(&self, powers: &MPowers) -> Vec<Complex> {
        self.xcoeffs.iter().map(|c| c.eval(powers)).collect()
    }

    /// Direct evaluation at `(x, M)`.
    pub fn eval(&self, x: &Complex, powers: &MPowers) -> Complex {
        let mut acc = Complex::new(powers.prec());
        for c in self.xcoeffs.iter().rev() {
            acc *= x;
            acc += c.eval(powers);
        }
        acc
    }

    /// Power table wide enough to evaluate this polynomial at `M`.
    pub fn powers_for(&self, m: &Complex) -> MPowers {
        let (lo, hi) = self.m_range().unwrap_or((0, 0));
        MPowers::new(m, lo.min(0), hi.max(0))
    }

    pub fn to_json(&self) -> BivarPolyJson {
        BivarPolyJson {
            x_deg: self.x_degree().map_or(-1, |d| d as i64),
            coeffs: self
                .xcoeffs
                .iter()
                .map(|c| c.terms().map(|(e, v)| (e, v.to_string())).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &BivarPolyJson) -> Result<Self> {
        let xcoeffs = j
            .coeffs
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|(e, s)| {
                        s.parse::<Integer>()
                            .map(|v| LaurentInt::monomial(*e, v))
                            .map_err(|err| Error::Format(format!("bad integer {s:?}: {err}")))
                    })
                    .try_fold(LaurentInt::zero(), |acc, t| Ok(acc + t?))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = BivarPoly::new(xcoeffs);
        let deg = p.x_degree().map_or(-1, |d| d as i64);
        if deg != j.x_deg {
            return Err(Error::Format(format!("x_deg {} does not match coefficients ({deg})", j.x_deg)));
        }
        Ok(p)
    }
}

/// Canonical JSON form: `{"x_deg": d, "coeffs": [[[m_exp, "int"], ...], ...]}`
/// with integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivarPolyJson {
    pub x_deg: i64,
    pub coeffs: Vec<Vec<(i64, String)>>,
}

impl Serialize for BivarPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BivarPolyJson::deserialize(d)?;
        BivarPoly::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.xcoeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c}) x")?,
                _ => write!(f, "({c}) x^{j}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let n = self.xcoeffs.len().max(rhs.xcoeffs.len());
        BivarPoly::new((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let n = self.xcoeffs.len().max(rhs.xcoeffs.len());
        BivarPoly::new((0..n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero();
        }
        let mut out = vec![LaurentInt::zero(); self.xcoeffs.len() + rhs.xcoeffs.len() - 1];
        for (i, a) in self.xcoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.xcoeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        BivarPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentInt {
        LaurentInt::from_terms(terms)
    }

    #[test]
    fn arithmetic_and_degree() {
        let x = BivarPoly::x();
        let a = &x + &BivarPoly::monomial_m(2, 3);
        let b = &x - &BivarPoly::monomial_m(-1, 1);
        let p = &a * &b;
        assert_eq!(p.x_degree(), Some(2));
        assert_eq!(p.coeff(0), lp(&[(1, -3)]));
        assert_eq!(p.coeff(1), lp(&[(2, 3), (-1, -1)]));
        assert!((&p - &p).is_zero());
        assert_eq!(p.m_range(), Some((-1, 2)));
    }

    #[test]
    fn monic_division() {
        let d = BivarPoly::new(vec![lp(&[(0, -1), (2, 2)]), lp(&[(2, -1)])]);
        let q = BivarPoly::new(vec![lp(&[(1, 5)]), lp(&[(0, 1), (3, -2)]), lp(&[(4, 1)])]);
        let r = BivarPoly::constant(lp(&[(7, 3)]));
        let n = &(&q * &d) + &r;
        let (q2, r2) = n.div_rem_monic(&d).unwrap();
        assert_eq!(q2, q);
        assert_eq!(r2, r);
        let nonunit = BivarPoly::new(vec![lp(&[(0, 1)]), lp(&[(0, 2)])]);
        assert!(n.div_rem_monic(&nonunit).is_none());
    }

    #[test]
    fn json_round_trip() {
        let p = BivarPoly::new(vec![lp(&[(6, 2)]), lp(&[(-2, 1), (0, -7)])]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"x_deg":1,"coeffs":[[[6,"2"]],[[-2,"1"],[0,"-7"]]]}"#);
        let back: BivarPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"x_deg":3,"coeffs":[[[0,"1"]]]}"#;
        assert!(serde_json::from_str::<BivarPoly>(bad).is_err());
    }
}
