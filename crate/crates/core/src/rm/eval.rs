//! Fast numeric evaluation of `P_2n(x, M)` and its low-order derivatives by
//! running the three-term recursion on numbers instead of polynomials.
//! Cost is linear in `|n|`, independent of the size of the expanded
//! coefficients.

use rug::{Complex, Float};

use super::bivar::BivarPoly;
use super::family::{p0_poly, p2_poly, pm2_poly, q_poly, rm_c2n4};
use super::laurent::MPowers;
use crate::error::{Error, Result};
use crate::numeric::{unit_m, CPoly};

/// Value and first/second partial derivatives in `x` and `M`.
#[derive(Debug, Clone)]
pub struct Jet {
    pub v: Complex,
    pub x: Complex,
    pub m: Complex,
    pub xx: Complex,
    pub xm: Complex,
    pub mm: Complex,
}

/// Value and partial derivatives in `x` and the cone angle `alpha`,
/// for `M = e^{i alpha / 2}`.
#[derive(Debug, Clone)]
pub struct AlphaJet {
    pub v: Complex,
    pub x: Complex,
    pub a: Complex,
    pub xx: Complex,
    pub xa: Complex,
    pub aa: Complex,
}

fn horner2(coeffs: &[Complex], x: &Complex, prec: u32) -> (Complex, Complex, Complex) {
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    let mut hp = Complex::new(prec);
    for c in coeffs.iter().rev() {
        hp *= x;
        hp += &dp;
        dp *= x;
        dp += &p;
        p *= x;
        p += c;
    }
    hp *= 2u32;
    (p, dp, hp)
}

fn horner1(coeffs: &[Complex], x: &Complex, prec: u32) -> (Complex, Complex) {
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    for c in coeffs.iter().rev() {
        dp *= x;
        dp += &p;
        p *= x;
        p += c;
    }
    (p, dp)
}

fn mul(a: &Complex, b: &Complex) -> Complex {
    Complex::with_val(a.prec(), a * b)
}

impl Jet {
    fn of(poly: &[BivarPoly; 3], x: &Complex, powers: &MPowers) -> Jet {
        let prec = powers.prec().0;
        let (v, dx, dxx) = horner2(&poly[0].eval_coeffs(powers), x, prec);
        let (m, xm) = horner1(&poly[1].eval_coeffs(powers), x, prec);
        let mm = poly[2].eval(x, powers);
        Jet { v, x: dx, m, xx: dxx, xm, mm }
    }

    /// `a * b - c * d` with `c` depending on `M` only.
    fn recur(a: &Jet, b: &Jet, c: &Jet, d: &Jet) -> Jet {
        let mut v = mul(&a.v, &b.v);
        v -= mul(&c.v, &d.v);

        let mut x = mul(&a.x, &b.v);
        x += mul(&a.v, &b.x);
        x -= mul(&c.v, &d.x);

        let mut m = mul(&a.m, &b.v);
        m += mul(&a.v, &b.m);
        m -= mul(&c.m, &d.v);
        m -= mul(&c.v, &d.m);

        let mut xx = mul(&a.xx, &b.v);
        let mut cross = mul(&a.x, &b.x);
        cross *= 2u32;
        xx += cross;
        xx += mul(&a.v, &b.xx);
        xx -= mul(&c.v, &d.xx);

        let mut xm = mul(&a.xm, &b.v);
        xm += mul(&a.x, &b.m);
        xm += mul(&a.m, &b.x);
        xm += mul(&a.v, &b.xm);
        xm -= mul(&c.m, &d.x);
        xm -= mul(&c.v, &d.xm);

        let mut mm = mul(&a.mm, &b.v);
        let mut cross = mul(&a.m, &b.m);
        cross *= 2u32;
        mm += cross;
        mm += mul(&a.v, &b.mm);
        mm -= mul(&c.mm, &d.v);
        let mut cross = mul(&c.m, &d.m);
        cross *= 2u32;
        mm -= cross;
        mm -= mul(&c.v, &d.mm);

        Jet { v, x, m, xx, xm, mm }
    }

    /// Converts `M`-derivatives into `alpha`-derivatives on the unit circle.
    pub fn to_alpha(&self, m: &Complex) -> AlphaJet {
        let prec = m.prec().0;
        // dM/dalpha = i M / 2
        let dm = Complex::with_val(prec, m * Complex::with_val(prec, (0, 1))) / 2u32;
        let a = mul(&self.m, &dm);
        let xa = mul(&self.xm, &dm);
        let mut aa = mul(&self.mm, &Complex::with_val(prec, &dm * &dm));
        let ddm = Complex::with_val(prec, &dm * Complex::with_val(prec, (0, 1))) / 2u32;
        aa += mul(&self.m, &Complex::with_val(prec, ddm));
        AlphaJet { v: self.v.clone(), x: self.x.clone(), a, xx: self.xx.clone(), xa, aa }
    }
}

fn with_m_derivatives(p: BivarPoly) -> [BivarPoly; 3] {
    let d1 = p.derivative_m();
    let d2 = d1.derivative_m();
    [p, d1, d2]
}

/// Numeric evaluator for one member `P_2n` of the family.
#[derive(Debug, Clone)]
pub struct RmEvaluator {
    n: i64,
    q: [BivarPoly; 3],
    base: [BivarPoly; 3],
    start: [BivarPoly; 3],
    m12: [BivarPoly; 3],
    expanded: BivarPoly,
}

impl RmEvaluator {
    pub fn new(n: i64) -> Result<Self> {
        let expanded = rm_c2n4(n)?;
        let base = if n > 0 { p2_poly() } else { pm2_poly() };
        Ok(RmEvaluator {
            n,
            q: with_m_derivatives(q_poly()),
            base: with_m_derivatives(base),
            start: with_m_derivatives(p0_poly(n > 0)),
            m12: with_m_derivatives(BivarPoly::monomial_m(12, 1)),
            expanded,
        })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// The expanded polynomial `P_2n`.
    pub fn poly(&self) -> &BivarPoly {
        &self.expanded
    }

    fn small_powers(m: &Complex) -> MPowers {
        MPowers::new(m, -4, 12)
    }

    /// `(P, dP/dx)` at `(x, M)`.
    pub fn value_dx(&self, x: &Complex, m: &Complex) -> (Complex, Complex) {
        let powers = Self::small_powers(m);
        let prec = powers.prec().0;
        let q = horner1(&self.q[0].eval_coeffs(&powers), x, prec);
        let m12 = powers.get(12).clone();
        let mut prev = horner1(&self.start[0].eval_coeffs(&powers), x, prec);
        let mut cur = horner1(&self.base[0].eval_coeffs(&powers), x, prec);
        for _ in 1..self.n.unsigned_abs() {
            let mut v = mul(&q.0, &cur.0);
            v -= mul(&m12, &prev.0);
            let mut d = mul(&q.1, &cur.0);
            d += mul(&q.0, &cur.1);
            d -= mul(&m12, &prev.1);
            prev = std::mem::replace(&mut cur, (v, d));
        }
        cur
    }

    /// Full second-order jet at `(x, M)`.
    pub fn jet(&self, x: &Complex, m: &Complex) -> Jet {
        let powers = Self::small_powers(m);
        let q = Jet::of(&self.q, x, &powers);
        let m12 = Jet::of(&self.m12, x, &powers);
        let mut prev = Jet::of(&self.start, x, &powers);
        let mut cur = Jet::of(&self.base, x, &powers);
        for _ in 1..self.n.unsigned_abs() {
            let next = Jet::recur(&q, &cur, &m12, &prev);
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// Jet in `(x, alpha)` with `M = e^{i alpha / 2}`.
    pub fn alpha_jet(&self, x: &Complex, alpha: &Float) -> AlphaJet {
        let m = unit_m(alpha);
        self.jet(x, &m).to_alpha(&m)
    }

    /// Numeric coefficients of `P_2n(., M)` as a polynomial in `x`.
    pub fn coefficients(&self, m: &Complex) -> CPoly {
        let powers = self.expanded.powers_for(m);
        CPoly::new(self.expanded.eval_coeffs(&powers))
    }

    /// Coefficients at `M = e^{i alpha / 2}`, with the powers of `M` taken
    /// directly from `cos`/`sin`.
    pub fn coefficients_at(&self, alpha: &Float) -> CPoly {
        let (lo, hi) = self.expanded.m_range().unwrap_or((0, 0));
        let powers = MPowers::unit_circle(alpha, lo.min(0), hi.max(0));
        CPoly::new(self.expanded.eval_coeffs(&powers))
    }
}

/// Shorthand used by callers that only hold `n`.
pub fn evaluator(n: i64) -> Result<RmEvaluator> {
    if n == 0 {
        return Err(Error::InvalidIndex);
    }
    RmEvaluator::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: &Complex, b: &Complex) -> f64 {
        let d = Complex::with_val(a.prec(), a - b);
        let s = Float::with_val(64, b.abs_ref()).max(&Float::with_val(64, 1e-300));
        (Float::with_val(64, d.abs_ref()) / s).to_f64()
    }

    #[test]
    fn recursion_matches_expanded_polynomial() {
        let prec = 192;
        let x = Complex::with_val(prec, (0.7, -0.3));
        let m = Complex::with_val(prec, (0.2, 1.1));
        for n in [-5, -2, -1, 1, 2, 3, 7] {
            let ev = RmEvaluator::new(n).unwrap();
            let p = ev.poly();
            let powers = MPowers::new(&m, -200, 200);
            let direct = p.eval(&x, &powers);
            let dx = p.derivative_x().eval(&x, &powers);
            let dm = p.derivative_m().eval(&x, &powers);
            let dxx = p.derivative_x().derivative_x().eval(&x, &powers);
            let dxm = p.derivative_x().derivative_m().eval(&x, &powers);
            let dmm = p.derivative_m().derivative_m().eval(&x, &powers);
            let (v, d) = ev.value_dx(&x, &m);
            assert!(rel(&v, &direct) < 1e-40, "n = {n}");
            assert!(rel(&d, &dx) < 1e-40, "n = {n}");
            let j = ev.jet(&x, &m);
            assert!(rel(&j.v, &direct) < 1e-40);
            assert!(rel(&j.x, &dx) < 1e-40);
            assert!(rel(&j.m, &dm) < 1e-40, "n = {n}");
            assert!(rel(&j.xx, &dxx) < 1e-40);
            assert!(rel(&j.xm, &dxm) < 1e-40);
            assert!(rel(&j.mm, &dmm) < 1e-40, "n = {n}");
        }
    }

    #[test]
    fn alpha_derivatives_match_finite_differences() {
        let prec = 256;
        let ev = RmEvaluator::new(2).unwrap();
        let x = Complex::with_val(prec, (0.4, -0.2));
        let a = Float::with_val(prec, 1.3);
        let h = Float::with_val(prec, 1e-20);
        let j = ev.alpha_jet(&x, &a);
        let plus = ev.alpha_jet(&x, &Float::with_val(prec, &a + &h));
        let minus = ev.alpha_jet(&x, &Float::with_val(prec, &a - &h));
        let fd = Complex::with_val(prec, &plus.v - &minus.v) / Complex::with_val(prec, 2 * &h);
        assert!(rel(&fd, &j.a) < 1e-30);
        let fd2 = Complex::with_val(prec, &plus.a - &minus.a) / Complex::with_val(prec, 2 * &h);
        assert!(rel(&fd2, &j.aa) < 1e-30);
        let fdx = Complex::with_val(prec, &plus.x - &minus.x) / Complex::with_val(prec, 2 * &h);
        assert!(rel(&fdx, &j.xa) < 1e-30);
    }
}
