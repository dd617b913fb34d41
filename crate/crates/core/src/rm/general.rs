//! Numeric Riley-Mednykh evaluator for an arbitrary two-bridge slope, in the
//! `(alpha, d)` coordinates where both meridians are elliptic rotations of
//! angle `alpha` about axes at distance `d`.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::knot::{schubert_word, GroupWord, Slope};
use crate::numeric::{cabs_f64, CMatrix2, GeneratorImages};

/// Cone angle `alpha` and complex axis distance `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralRepParams {
    pub alpha: Float,
    pub d: Complex,
}

impl GeneralRepParams {
    pub fn new(alpha: Float, d: Complex) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0 {
            return Err(Error::Config(format!("cone angle must be positive, got {}", alpha.to_f64())));
        }
        Ok(GeneralRepParams { alpha, d })
    }

    pub fn prec(&self) -> u32 {
        self.alpha.prec()
    }

    /// `A = cot(alpha / 2)`.
    pub fn a(&self) -> Float {
        let half = Float::with_val(self.prec(), &self.alpha / 2u32);
        half.cot()
    }

    /// `V = cosh d`.
    pub fn v(&self) -> Complex {
        Complex::with_val(self.prec(), self.d.cosh_ref())
    }

    /// Inverse of [`coordinate_bridge`]: the parameters whose `x` is given.
    pub fn from_x(alpha: Float, x: &Complex) -> Result<Self> {
        let prec = alpha.prec();
        let s = Float::with_val(prec, &alpha / 2u32).sin();
        let s2 = Float::with_val(prec, &s * &s) * 2u32;
        if s2.is_zero() {
            return Err(Error::DegenerateParameters);
        }
        let v = Complex::with_val(prec, x / &s2) - 1u32;
        let d = v.acosh();
        GeneralRepParams::new(alpha, d)
    }

    fn generators(&self) -> GeneratorImages {
        let prec = self.prec();
        let half = Float::with_val(prec, &self.alpha / 2u32);
        let (sn, cs) = half.sin_cos(Float::new(prec));
        let i = Complex::with_val(prec, (0, 1));
        let e_plus = Complex::with_val(prec, &self.d / 2u32).exp();
        let e_minus = Complex::with_val(prec, e_plus.recip_ref());
        let c = Complex::with_val(prec, (cs, 0));
        let off = |e: &Complex| Complex::with_val(prec, &i * e) * &sn;
        let s = CMatrix2::new(c.clone(), off(&e_plus), off(&e_minus), c.clone());
        let t = CMatrix2::new(c.clone(), off(&e_minus), off(&e_plus), c);
        GeneratorImages::new(s, t)
    }
}

/// `x = 2 sin^2(alpha/2) (1 + cosh d)`, the value of `2 - tr(ST)`.
pub fn coordinate_bridge(alpha: &Float, d: &Complex) -> Complex {
    let prec = alpha.prec();
    let s = Float::with_val(prec, alpha / 2u32).sin();
    let s2 = Float::with_val(prec, &s * &s) * 2u32;
    let v = Complex::with_val(prec, d.cosh_ref()) + 1u32;
    Complex::with_val(prec, &v * &s2)
}

fn involution(prec: u32) -> CMatrix2 {
    CMatrix2::new(
        Complex::new(prec),
        Complex::with_val(prec, -1),
        Complex::with_val(prec, 1),
        Complex::new(prec),
    )
}

/// `tr(S W c) / tr(S c)` for an arbitrary word `W`.
pub fn trace_ratio_value(word: &GroupWord, params: &GeneralRepParams) -> Result<Complex> {
    let prec = params.prec();
    let g = params.generators();
    let c = involution(prec);
    let sc = g.s.mul(&c).trace();
    // tr(Sc) = 2i sin(alpha/2) sinh(d/2); zero on the reducible locus
    if cabs_f64(&sc) < f64::powi(2.0, -(prec as i32) / 2) {
        return Err(Error::DegenerateParameters);
    }
    let swc = g.s.mul(&g.word(word)).mul(&c).trace();
    Ok(Complex::with_val(prec, &swc / &sc))
}

/// The Riley-Mednykh function of `slope` at `params`; zero exactly at the
/// parameters of a representation.
pub fn rm_general_value(slope: Slope, params: &GeneralRepParams) -> Result<Complex> {
    trace_ratio_value(&schubert_word(slope), params)
}

/// `rho(word)` with the `(alpha, d)` generators.
pub fn general_word_matrix(word: &GroupWord, params: &GeneralRepParams) -> CMatrix2 {
    params.generators().word(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{c2n4_word, slope_of_c2n4};
    use crate::rm::eval::RmEvaluator;
    use crate::numeric::{all_roots, unit_m, PrecisionConfig};

    #[test]
    fn bridge_examples() {
        let prec = 128;
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        let x = coordinate_bridge(&pi, &Complex::new(prec));
        assert!(cabs_f64(&Complex::with_val(prec, &x - 4u32)) < 1e-35);
        let tiny = Float::with_val(prec, 1e-12);
        let x = coordinate_bridge(&tiny, &Complex::with_val(prec, (0.3, 0.2)));
        assert!(cabs_f64(&x) < 1e-20);
        let d = Complex::with_val(prec, (0.7, -0.4));
        let a = Float::with_val(prec, 1.9);
        let back = GeneralRepParams::from_x(a.clone(), &coordinate_bridge(&a, &d)).unwrap();
        let v = GeneralRepParams::new(a, d).unwrap().v();
        assert!(cabs_f64(&Complex::with_val(prec, &back.v() - &v)) < 1e-30);
    }

    #[test]
    fn empty_word_gives_one() {
        let p = GeneralRepParams::new(Float::with_val(128, 2.0), Complex::with_val(128, (0.5, 0.1))).unwrap();
        let r = trace_ratio_value(&GroupWord::empty(), &p).unwrap();
        assert!(cabs_f64(&Complex::with_val(128, &r - 1u32)) < 1e-35);
    }

    #[test]
    fn degenerate_axis_distance() {
        let p = GeneralRepParams::new(Float::with_val(128, 2.0), Complex::new(128)).unwrap();
        assert_eq!(trace_ratio_value(&GroupWord::empty(), &p), Err(Error::DegenerateParameters));
    }

    #[test]
    fn vanishes_at_family_roots() {
        let cfg = PrecisionConfig::new(192).unwrap();
        for n in [1i64, -1, 2, -2] {
            let ev = RmEvaluator::new(n).unwrap();
            let alpha = Float::with_val(192, 2.0);
            let roots = all_roots(&ev.coefficients(&unit_m(&alpha)), &cfg).unwrap();
            let slope = slope_of_c2n4(n).unwrap();
            for x in &roots {
                let params = GeneralRepParams::from_x(alpha.clone(), x).unwrap();
                let w1 = trace_ratio_value(&c2n4_word(n).unwrap(), &params).unwrap();
                let w2 = rm_general_value(slope, &params).unwrap();
                assert!(cabs_f64(&w1) < 1e-40, "n = {n}: {}", cabs_f64(&w1));
                assert!(cabs_f64(&w2) < 1e-40, "n = {n}: {}", cabs_f64(&w2));
            }
        }
    }
}
