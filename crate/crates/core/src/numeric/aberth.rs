//! Simultaneous root iteration (Aberth-Ehrlich). A double-precision pass
//! locates the roots cheaply; the multiprecision pass then refines all of
//! them together from those starting points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Float};

use super::cpoly::CPoly;
use super::precision::PrecisionConfig;
use crate::error::{Error, Result};

const F64_ITERS: usize = 600;
const MP_ITERS: usize = 200;
const RESTARTS: usize = 4;

fn initial_guesses(coeffs: &[Complex64], rotation: f64, jitter: &mut ChaCha8Rng) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].norm();
    // radius from the geometric mean of the root moduli, kept away from 0
    let r = if coeffs[0].norm() > 0.0 {
        (coeffs[0].norm() / lead).powf(1.0 / d as f64)
    } else {
        1.0
    };
    let r = if r.is_finite() && r > 1e-8 { r } else { 1.0 };
    (0..d)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64) / (d as f64) + rotation;
            let rr = r * (1.0 + 0.05 * jitter.gen::<f64>());
            Complex64::from_polar(rr, theta)
        })
        .collect()
}

fn aberth_f64(coeffs: &[Complex64], roots: &mut [Complex64]) {
    let d = roots.len();
    for _ in 0..F64_ITERS {
        let mut max_rel = 0.0f64;
        for k in 0..d {
            let z = roots[k];
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for c in coeffs.iter().rev() {
                dp = dp * z + p;
                p = p * z + c;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != k {
                    let diff = z - zj;
                    if diff.norm() > 0.0 {
                        s += 1.0 / diff;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                roots[k] = z - w;
                max_rel = max_rel.max(w.norm() / z.norm().max(1e-300));
            }
        }
        if max_rel < 1e-15 {
            break;
        }
    }
}

/// Refines all roots at full precision; returns the last maximum
/// correction relative to `max(1, |z|)`.
fn aberth_mp(poly: &CPoly, roots: &mut [Complex], cfg: &PrecisionConfig) -> bool {
    let prec = cfg.prec();
    let d = roots.len();
    let stop = cfg.epsilon(12);
    let mut s = Complex::new(prec);
    let mut diff = Complex::new(prec);
    let mut quiet_rounds = 0;
    for _ in 0..MP_ITERS {
        let mut max_rel = Float::new(64);
        for k in 0..d {
            let (p, dp) = poly.eval_d1(&roots[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = Complex::with_val(prec, &p / &dp);
            s.assign_zero();
            for j in 0..d {
                if j != k {
                    diff.clone_from(&roots[k]);
                    diff -= &roots[j];
                    if !diff.is_zero() {
                        s += Complex::with_val(prec, diff.recip_ref());
                    }
                }
            }
            let mut denom = Complex::with_val(prec, &ratio * &s);
            denom = Complex::with_val(prec, 1 - denom);
            let w = Complex::with_val(prec, &ratio / &denom);
            if !(w.real().is_finite() && w.imag().is_finite()) {
                continue;
            }
            let zabs = Float::with_val(64, roots[k].abs_ref()).max(&Float::with_val(64, 1));
            let rel = Float::with_val(64, w.abs_ref()) / zabs;
            if rel > max_rel {
                max_rel = rel;
            }
            roots[k] -= &w;
        }
        if max_rel < stop {
            quiet_rounds += 1;
            if quiet_rounds >= 2 {
                return true;
            }
        } else {
            quiet_rounds = 0;
        }
    }
    false
}

trait AssignZero {
    fn assign_zero(&mut self);
}

impl AssignZero for Complex {
    fn assign_zero(&mut self) {
        let p = self.prec();
        *self = Complex::new(p);
    }
}

/// Every root of `poly` (with multiplicity), each meeting the relative
/// residual tolerance of `cfg`.
pub fn all_roots(poly: &CPoly, cfg: &PrecisionConfig) -> Result<Vec<Complex>> {
    let d = poly.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    let prec = cfg.prec();
    let c64 = poly.to_c64();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2b1d_6e);
    let mut worst = f64::INFINITY;
    for attempt in 0..RESTARTS {
        let rotation = 0.4 + 0.7 * attempt as f64;
        let mut z64 = initial_guesses(&c64, rotation, &mut rng);
        aberth_f64(&c64, &mut z64);
        let mut roots: Vec<Complex> = z64
            .iter()
            .map(|z| {
                let (re, im) = if z.is_finite() { (z.re, z.im) } else { (rng.gen::<f64>(), rng.gen::<f64>()) };
                Complex::with_val(prec, (re, im))
            })
            .collect();
        aberth_mp(poly, &mut roots, cfg);
        worst = roots
            .iter()
            .map(|z| poly.relative_residual(z).to_f64())
            .fold(0.0, f64::max);
        if worst <= cfg.root_residual_tol.to_f64() {
            return Ok(roots);
        }
    }
    Err(Error::SolverFailure { worst_residual: worst })
}

/// Newton refinement of a single simple root.
pub fn newton_polish(poly: &CPoly, x: &Complex, cfg: &PrecisionConfig, max_iter: usize) -> Complex {
    let prec = cfg.prec();
    let stop = cfg.epsilon(8);
    let mut x = x.clone();
    for _ in 0..max_iter {
        let (p, dp) = poly.eval_d1(&x);
        if dp.is_zero() {
            break;
        }
        let step = Complex::with_val(prec, &p / &dp);
        x -= &step;
        let scale = Float::with_val(64, x.abs_ref()).max(&Float::with_val(64, 1));
        if Float::with_val(64, step.abs_ref()) / scale < stop {
            break;
        }
    }
    x
}
