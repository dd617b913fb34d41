use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numeric::{all_roots, cabs, PrecisionConfig};
use crate::rm::eval::RmEvaluator;
use crate::rm::family::expected_degree;

/// Every root of `P_2n(., e^{i alpha/2})`, with multiplicity.
pub fn roots_at(n: i64, alpha: &Float, cfg: &PrecisionConfig) -> Result<Vec<Complex>> {
    let ev = RmEvaluator::new(n)?;
    roots_with(&ev, alpha, cfg)
}

pub(crate) fn roots_with(ev: &RmEvaluator, alpha: &Float, cfg: &PrecisionConfig) -> Result<Vec<Complex>> {
    if !(alpha.is_finite() && *alpha > 0) || *alpha > cfg.pi() {
        return Err(Error::Config(format!("cone angle {} outside (0, pi]", alpha.to_f64())));
    }
    let alpha = Float::with_val(cfg.prec(), alpha);
    let poly = ev.coefficients_at(&alpha);
    debug_assert_eq!(poly.degree(), expected_degree(ev.n()));
    all_roots(&poly, cfg)
}

/// The two real values of the geometric component at `alpha = pi`:
/// `2 - 2cos(pi(1-2n)/(8n+1))` and `2 - 2cos(pi(-2n-1)/(8n+1))`.
pub fn anchor_roots(n: i64, prec: u32) -> Result<(Float, Float)> {
    if n == 0 {
        return Err(Error::InvalidKnot("C(0,4) is not in the family".into()));
    }
    let pi = Float::with_val(prec, Constant::Pi);
    let den = 8 * n + 1;
    let at = |num: i64| {
        let angle = Float::with_val(prec, &pi * num) / den;
        2 - 2 * angle.cos()
    };
    Ok((Float::with_val(prec, at(1 - 2 * n)), Float::with_val(prec, at(-2 * n - 1))))
}

/// Newton's method on `x -> P_2n(x, m)`. Returns `None` unless the
/// correction falls to working precision.
pub(crate) fn newton(ev: &RmEvaluator, x0: &Complex, m: &Complex, cfg: &PrecisionConfig) -> Option<Complex> {
    let prec = cfg.prec();
    let tight = cfg.epsilon(24);
    let loose = Float::with_val(64, &cfg.root_residual_tol);
    let mut x = x0.clone();
    let mut last = Float::with_val(64, f64::INFINITY);
    for _ in 0..60 {
        let (p, dp) = ev.value_dx(&x, m);
        if dp.is_zero() {
            return None;
        }
        let step = Complex::with_val(prec, &p / &dp);
        x -= &step;
        let scale = Float::with_val(64, cabs(&x)).max(&Float::with_val(64, 1));
        let rel = Float::with_val(64, cabs(&step) / scale);
        if !rel.is_finite() {
            return None;
        }
        if rel <= tight {
            return Some(x);
        }
        // stalled at the rounding floor after a sharp drop
        if rel >= last && last <= loose {
            return Some(x);
        }
        last = rel;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::cabs_f64;

    #[test]
    fn anchors_for_small_n() {
        let (a, b) = anchor_roots(1, 128).unwrap();
        assert!((a.to_f64() - 0.1206147584).abs() < 1e-10);
        assert!((b.to_f64() - 1.0).abs() < 1e-30);
        let (a, b) = anchor_roots(-1, 128).unwrap();
        assert!((a.to_f64() - 1.5549581321).abs() < 1e-10);
        assert!((b.to_f64() - 0.1980622642).abs() < 1e-10);
        assert!(anchor_roots(0, 128).is_err());
    }

    #[test]
    fn anchors_are_roots_at_pi() {
        for n in [-4i64, -1, 1, 2, 5] {
            let ev = RmEvaluator::new(n).unwrap();
            let i = Complex::with_val(192, (0, 1));
            let (a, b) = anchor_roots(n, 192).unwrap();
            for x in [a, b] {
                assert!(2 - x.clone() > 0);
                let (p, _) = ev.value_dx(&Complex::with_val(192, (x, 0)), &i);
                let scale = ev.coefficients(&i).eval_scale(&Complex::with_val(192, 1));
                assert!(cabs_f64(&p) / scale.to_f64() < 1e-50, "n = {n}");
            }
        }
    }

    #[test]
    fn root_counts() {
        let cfg = PrecisionConfig::new(128).unwrap();
        let pi = cfg.pi();
        assert_eq!(roots_at(1, &pi, &cfg).unwrap().len(), 4);
        assert_eq!(roots_at(-1, &pi, &cfg).unwrap().len(), 3);
        assert_eq!(roots_at(3, &Float::with_val(128, 1.0), &cfg).unwrap().len(), 12);
        assert!(roots_at(1, &Float::with_val(128, 4.0), &cfg).is_err());
    }
}
