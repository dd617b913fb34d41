use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::knot::GroupWord;
use crate::numeric::{cabs, unit_m, CMatrix2, GeneratorImages};
use crate::rm::family::u_matrix;
use crate::rm::laurent::MPowers;
use crate::rm::matrix::SymMatrix2;

fn powers(m: &Complex) -> MPowers {
    MPowers::new(m, -16, 16)
}

/// `-M^-2 num / den` with the longitude numerator and denominator.
fn num_den(x: &Complex, m: &Complex) -> (Complex, Complex, Complex) {
    let prec = x.prec().0;
    let p = powers(m);
    let c = |e: i64| p.get(e).clone();
    let x2 = Complex::with_val(prec, x * x);
    // M^-4 - M^-2 + (2M^-2 + M^2 - 1) x + x^2
    let mut lin = Complex::with_val(prec, c(-2) * 2u32) + c(2) - 1u32;
    let mut num = Complex::with_val(prec, c(-4) - c(-2));
    num += Complex::with_val(prec, &lin * x);
    num += &x2;
    // M^4 - M^2 + (M^-2 + 2M^2 - 1) x + x^2
    lin = Complex::with_val(prec, c(2) * 2u32) + c(-2) - 1u32;
    let mut den = Complex::with_val(prec, c(4) - c(2));
    den += Complex::with_val(prec, &lin * x);
    den += &x2;
    (num, den, c(-2))
}

/// The `(1,1)` entry of the longitude holonomy at a root `x` of `P_2n`,
/// from the closed formula in `x` and `M = e^{i alpha / 2}`.
pub fn longitude_l(x: &Complex, alpha: &Float) -> Result<Complex> {
    let m = unit_m(alpha);
    let (num, den, m_2) = num_den(x, &m);
    let scale = cabs(x).max(&Float::with_val(64, 1));
    let floor = Float::with_val(64, Float::i_exp(1, -(x.prec().0 as i32) / 2)) * Float::with_val(64, &scale * &scale);
    if cabs(&den) <= floor {
        return Err(Error::SingularLongitude);
    }
    let q = Complex::with_val(x.prec().0, &num / &den);
    Ok(-Complex::with_val(x.prec().0, &q * &m_2))
}

fn eval_matrix(a: &SymMatrix2, x: &Complex, m: &Complex) -> CMatrix2 {
    let p = powers(m);
    let e = |i: usize, j: usize| a.e[i][j].eval(x, &p);
    CMatrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

fn power(u: &CMatrix2, n: i64) -> CMatrix2 {
    if n >= 0 {
        u.pow(n as u32)
    } else {
        u.adjugate().pow(n.unsigned_abs() as u32)
    }
}

/// The same entry from `w21 L + w~21 = 0`, where `W = U^n` and `W~` is `W`
/// with `M` replaced by `1/M`.
pub fn longitude_l_from_lemma(n: i64, x: &Complex, alpha: &Float) -> Result<Complex> {
    let prec = x.prec().0;
    if n == 0 {
        return Ok(Complex::with_val(prec, 1));
    }
    let m = unit_m(alpha);
    let m_inv = Complex::with_val(prec, m.recip_ref());
    let u = u_matrix();
    let w = power(&eval_matrix(&u, x, &m), n);
    let wt = power(&eval_matrix(&u, x, &m_inv), n);
    let scale = w.max_abs().max(1.0);
    if cabs(&w.e[1][0]).to_f64() <= scale * f64::powi(2.0, -(prec as i32) / 2) {
        return Err(Error::SingularLongitude);
    }
    Ok(-Complex::with_val(prec, &wt.e[1][0] / &w.e[1][0]))
}

/// Numeric images of the meridians `S`, `T` at `(x, M)`.
pub fn meridian_images(x: &Complex, m: &Complex) -> GeneratorImages {
    let prec = x.prec().0;
    let m_inv = Complex::with_val(prec, m.recip_ref());
    let zero = Complex::new(prec);
    let s = CMatrix2::new(m.clone(), Complex::with_val(prec, 1), zero.clone(), m_inv.clone());
    let mut t21 = Complex::with_val(prec, 2) - Complex::with_val(prec, m * m);
    t21 -= Complex::with_val(prec, &m_inv * &m_inv);
    t21 -= x;
    let t = CMatrix2::new(m.clone(), zero, t21, m_inv);
    GeneratorImages::new(s, t)
}

/// Complex length of `word * reversed(word)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexLength {
    /// `gamma` with `tr = 2 cosh(gamma / 2)` and `Re gamma >= 0`.
    pub gamma: Complex,
    /// Real length `|Re gamma|`.
    pub l_real: Float,
    /// The trace is exactly `+-2`.
    pub parabolic: bool,
}

pub fn complex_length(word: &GroupWord, x: &Complex, alpha: &Float) -> ComplexLength {
    let prec = x.prec().0;
    let g = meridian_images(x, &unit_m(alpha));
    let l = word.concat(&word.reversed());
    let tr = g.word(&l).trace();
    let parabolic = tr.imag().is_zero() && (*tr.real() == 2 || *tr.real() == -2);
    let half = Complex::with_val(prec, &tr / 2u32);
    let mut gamma = Complex::with_val(prec, half.acosh_ref()) * 2u32;
    if *gamma.real() < 0 {
        gamma = -gamma;
    }
    let l_real = Float::with_val(prec, gamma.real().abs_ref());
    ComplexLength { gamma, l_real, parabolic }
}

/// Holonomy data of the longitude at one point of the branch.
#[derive(Debug, Clone, PartialEq)]
pub struct LongitudeHolonomy {
    pub l: Complex,
    pub gamma: Complex,
    pub l_real: Float,
}

impl LongitudeHolonomy {
    /// From `L`, with `gamma = 2 log L` taken on the `|L| >= 1` side.
    pub fn from_l(l: Complex) -> Self {
        let prec = l.prec().0;
        let mut gamma = Complex::with_val(prec, l.ln_ref()) * 2u32;
        if *gamma.real() < 0 {
            gamma = -gamma;
        }
        let l_real = Float::with_val(prec, gamma.real().abs_ref());
        LongitudeHolonomy { l, gamma, l_real }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::c2n4_word;
    use crate::numeric::{all_roots, cabs_f64, PrecisionConfig};
    use crate::rm::eval::RmEvaluator;

    #[test]
    fn lemma_agrees_with_formula() {
        let cfg = PrecisionConfig::new(256).unwrap();
        for n in [1i64, -1, 2, -3] {
            let ev = RmEvaluator::new(n).unwrap();
            let alpha = Float::with_val(256, 1.7);
            for x in all_roots(&ev.coefficients_at(&alpha), &cfg).unwrap() {
                let a = longitude_l(&x, &alpha).unwrap();
                let b = longitude_l_from_lemma(n, &x, &alpha).unwrap();
                let rel = cabs_f64(&Complex::with_val(256, &a - &b)) / cabs_f64(&a);
                assert!(rel < 1e-60, "n = {n}: {rel}");
            }
        }
    }

    #[test]
    fn real_root_has_unit_longitude() {
        let x = Complex::with_val(128, (0.37, 0));
        let l = longitude_l(&x, &Float::with_val(128, 2.9)).unwrap();
        assert!((cabs_f64(&l) - 1.0).abs() < 1e-30);
    }

    #[test]
    fn conjugate_pair_has_reciprocal_moduli() {
        let a = Float::with_val(128, 1.1);
        let x = Complex::with_val(128, (0.8, -0.45));
        let l1 = cabs_f64(&longitude_l(&x, &a).unwrap());
        let l2 = cabs_f64(&longitude_l(&Complex::with_val(128, x.conj_ref()), &a).unwrap());
        assert!((l1 * l2 - 1.0).abs() < 1e-30);
    }

    #[test]
    fn identity_word_is_parabolic() {
        let c = complex_length(&GroupWord::empty(), &Complex::with_val(128, (0.5, 0.1)), &Float::with_val(128, 1.0));
        assert!(c.parabolic);
        assert!(c.l_real.is_zero());
    }

    #[test]
    fn trace_length_matches_longitude() {
        let cfg = PrecisionConfig::new(192).unwrap();
        let n = 1;
        let ev = RmEvaluator::new(n).unwrap();
        let alpha = Float::with_val(192, 1.2);
        let word = c2n4_word(n).unwrap();
        for x in all_roots(&ev.coefficients_at(&alpha), &cfg).unwrap() {
            let l = cabs_f64(&longitude_l(&x, &alpha).unwrap());
            let c = complex_length(&word, &x, &alpha);
            let expect = l.max(1.0 / l);
            assert!(((c.l_real.to_f64() / 2.0).exp() / expect - 1.0).abs() < 1e-12);
        }
    }
}
