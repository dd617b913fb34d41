//! Locating the transition angle `alpha_0`, where the two real roots of the
//! geometric component collide and leave the real axis as a conjugate pair.
//!
//! On `|M| = 1` the rotated polynomial `M^{-c} P_2n(x, M)` is real for real
//! `x`. Between the two spherical roots sits a critical point `x_c` of it,
//! and near the collision the roots are `x_c +- sqrt(g)` with
//! `g = -2 P(x_c) / P''(x_c)`. The sign of `g` is the bisection predicate:
//! positive while the pair is real and separated, negative once it is a
//! complex-conjugate pair.

use rug::float::Constant;
use rug::{Complex, Float};

use super::roots::anchor_roots;
use crate::error::{Error, Result};
use crate::numeric::{cabs, unit_m, PrecisionConfig};
use crate::rm::eval::RmEvaluator;
use crate::rm::family::reciprocal_center;

/// The collision point and how well it is pinned down.
#[derive(Debug, Clone, PartialEq)]
pub struct Alpha0 {
    pub alpha0: Float,
    /// The real double root at `alpha_0`.
    pub x0: Float,
    /// Size of the last Newton correction in `(x, alpha)`.
    pub error_bound: Float,
    /// `|dP/dx|` at the double root relative to `sum |a_j| |x0|^j`.
    pub derivative_residual: Float,
}

/// Real parts of `R P`, `R P_x`, `R P_xx` with `R = M^{-c}`, at real `x`.
struct RealSlice<'a> {
    ev: &'a RmEvaluator,
    center: i64,
    prec: u32,
}

impl<'a> RealSlice<'a> {
    fn new(ev: &'a RmEvaluator, prec: u32) -> Self {
        RealSlice { ev, center: reciprocal_center(ev.n()), prec }
    }

    fn rotation(&self, alpha: &Float) -> Complex {
        unit_m(&Float::with_val(self.prec, alpha * -self.center))
    }

    fn parts(&self, x: &Float, alpha: &Float) -> [Float; 3] {
        let xc = Complex::with_val(self.prec, (x, 0));
        let m = unit_m(alpha);
        let j = self.ev.jet(&xc, &m);
        let r = self.rotation(alpha);
        let re = |z: &Complex| Float::with_val(self.prec, Complex::with_val(self.prec, z * &r).real());
        [re(&j.v), re(&j.x), re(&j.xx)]
    }

    /// Newton on `R P` (`which = 0`) or on `R P_x` (`which = 1`).
    fn newton(&self, which: usize, x0: &Float, alpha: &Float, tol: &Float) -> Option<Float> {
        let mut x = x0.clone();
        for _ in 0..60 {
            let f = self.parts(&x, alpha);
            if f[which + 1].is_zero() {
                return None;
            }
            let step = Float::with_val(self.prec, &f[which] / &f[which + 1]);
            x -= &step;
            if !x.is_finite() {
                return None;
            }
            let scale = Float::with_val(64, x.abs_ref()).max(&Float::with_val(64, 1));
            if Float::with_val(64, step.abs_ref()) <= Float::with_val(64, tol * scale) {
                return Some(x);
            }
        }
        None
    }

    /// `g = -2 P(x_c) / P''(x_c)`.
    fn gap(&self, xc: &Float, alpha: &Float) -> Float {
        let f = self.parts(xc, alpha);
        Float::with_val(self.prec, -2 * &f[0]) / &f[2]
    }
}

fn sqrt_pos(g: &Float) -> Float {
    Float::with_val(g.prec(), g.sqrt_ref())
}

/// Finds `alpha_0(n)` in `[2pi/3, pi)` by tracking the spherical pair down
/// from the anchors at `pi`, bracketing the sign change of the gap and
/// polishing `P = dP/dx = 0` by Newton's method in `(x, alpha)`.
pub fn find_alpha0(n: i64, cfg: &PrecisionConfig) -> Result<Alpha0> {
    let ev = RmEvaluator::new(n)?;
    find_alpha0_with(&ev, cfg)
}

pub(crate) fn find_alpha0_with(ev: &RmEvaluator, cfg: &PrecisionConfig) -> Result<Alpha0> {
    let prec = cfg.prec();
    let slice = RealSlice::new(ev, prec);
    let tol = cfg.epsilon(24);
    let pi = cfg.pi();
    let floor = Float::with_val(prec, &pi * 2u32) / 3u32;
    let lost = |what: &str| Error::Geometry(format!("n = {}: {what}", ev.n()));

    let (a, b) = anchor_roots(ev.n(), prec)?;
    let (mut x1, mut x2) = if a < b { (a, b) } else { (b, a) };
    let mid = Float::with_val(prec, &x1 + &x2) / 2u32;
    let mut xc = slice
        .newton(1, &mid, &pi, &tol)
        .ok_or_else(|| lost("no critical point between the anchors"))?;
    if !(x1 < xc && xc < x2) {
        return Err(lost("critical point not between the anchors"));
    }

    let max_step = Float::with_val(prec, 1) / 32u32;
    let min_step = Float::with_val(64, Float::i_exp(1, -60));
    let mut alpha = pi.clone();
    let mut h = max_step.clone();
    let mut slope = Float::new(prec);
    let mut pair = true;
    let (lo, hi) = loop {
        let mut next = Float::with_val(prec, &alpha - &h);
        if next < floor {
            next = floor.clone();
        }
        let guess = Float::with_val(prec, &xc - Float::with_val(prec, &slope * &h));
        let accepted = slice.newton(1, &guess, &next, &tol).and_then(|c| {
            let g = slice.gap(&c, &next);
            if g < 0 {
                return Some((c, g, None));
            }
            if !pair {
                return Some((c, g, None));
            }
            let w = sqrt_pos(&g);
            if Float::with_val(64, &w - Float::with_val(64, &x2 - &x1) / 2u32).abs() > Float::with_val(64, &x2 - &x1) / 2u32 {
                return None;
            }
            let y1 = slice.newton(0, &Float::with_val(prec, &c - &w), &next, &tol)?;
            let y2 = slice.newton(0, &Float::with_val(prec, &c + &w), &next, &tol)?;
            (y1 < c && c < y2).then_some((c, g, Some((y1, y2))))
        });
        match accepted {
            Some((c, g, ys)) => {
                if g < 0 {
                    break (next, alpha);
                }
                if next == floor {
                    return Err(Error::Geometry(format!(
                        "n = {}: no collision of the spherical pair in [2pi/3, pi)",
                        ev.n()
                    )));
                }
                slope = Float::with_val(prec, &xc - &c) / &h;
                xc = c;
                match ys {
                    Some((y1, y2)) => {
                        pair = Float::with_val(64, &y2 - &y1) > 1e-6;
                        x1 = y1;
                        x2 = y2;
                    }
                    None => pair = false,
                }
                alpha = next;
                h = Float::with_val(prec, &h * 1.5f64).min(&max_step);
            }
            None => {
                h /= 2u32;
                if h < min_step {
                    return Err(lost("tracking of the spherical pair broke down"));
                }
            }
        }
    };

    // Bisection on the gap, following the critical point.
    let (mut lo, mut hi) = (lo, hi);
    let mut xc_lo = xc.clone();
    for _ in 0..30 {
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        let c = slice.newton(1, &xc_lo, &mid, &tol).ok_or_else(|| lost("critical point lost during bisection"))?;
        if slice.gap(&c, &mid) < 0 {
            lo = mid;
        } else {
            hi = mid;
        }
        xc_lo = c;
    }
    let alpha = Float::with_val(prec, &lo + &hi) / 2u32;
    let (alpha, x0, step) = polish_double_root(ev, &xc_lo, &alpha, cfg).ok_or_else(|| lost("Newton polish of the double root failed"))?;
    if alpha < floor || alpha >= pi {
        return Err(lost("collision angle outside [2pi/3, pi)"));
    }

    Ok(alpha0_record(ev, alpha, x0, step))
}

pub(crate) fn alpha0_record(ev: &RmEvaluator, alpha0: Float, x0: Float, error_bound: Float) -> Alpha0 {
    let prec = alpha0.prec();
    let xz = Complex::with_val(prec, (&x0, 0));
    let poly = ev.coefficients_at(&alpha0);
    let (_, dp) = poly.eval_d1(&xz);
    let derivative_residual = Float::with_val(64, cabs(&dp) / poly.eval_scale(&xz));
    Alpha0 { alpha0, x0, error_bound, derivative_residual }
}

/// Newton's method for `P = P_x = 0` in real `(x, alpha)`.
pub(crate) fn polish_double_root(
    ev: &RmEvaluator,
    x: &Float,
    alpha: &Float,
    cfg: &PrecisionConfig,
) -> Option<(Float, Float, Float)> {
    let prec = cfg.prec();
    let center = reciprocal_center(ev.n());
    let half_c = Complex::with_val(prec, (0, Float::with_val(prec, center) / 2u32));
    let stop = cfg.epsilon(16);
    let (mut x, mut a) = (x.clone(), alpha.clone());
    let mut last = Float::with_val(64, f64::INFINITY);
    for _ in 0..60 {
        let j = ev.alpha_jet(&Complex::with_val(prec, (&x, 0)), &a);
        let r = unit_m(&Float::with_val(prec, &a * -center));
        let rot = |z: &Complex| Float::with_val(prec, Complex::with_val(prec, z * &r).real());
        // d/dalpha (R f) = R (f_alpha - i c/2 f)
        let da = |fa: &Complex, f: &Complex| {
            let mut t = Complex::with_val(prec, &half_c * f);
            t = Complex::with_val(prec, fa - &t);
            rot(&t)
        };
        let (f1, f2) = (rot(&j.v), rot(&j.x));
        let (j11, j12) = (rot(&j.x), da(&j.a, &j.v));
        let (j21, j22) = (rot(&j.xx), da(&j.xa, &j.x));
        let det = Float::with_val(prec, &j11 * &j22) - Float::with_val(prec, &j12 * &j21);
        if det.is_zero() {
            return None;
        }
        let dx = (Float::with_val(prec, &f1 * &j22) - Float::with_val(prec, &f2 * &j12)) / &det;
        let dalpha = (Float::with_val(prec, &j11 * &f2) - Float::with_val(prec, &j21 * &f1)) / &det;
        x -= &dx;
        a -= &dalpha;
        let size = Float::with_val(64, dx.abs_ref()).max(&Float::with_val(64, dalpha.abs_ref()));
        if !size.is_finite() {
            return None;
        }
        if size <= stop || (size >= last && last < 1e-30) {
            return Some((a, x, size.max(&Float::with_val(64, &stop))));
        }
        last = size;
    }
    None
}

/// `2pi/3`, the lower end of the search interval.
pub fn alpha0_floor(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi) * 2u32 / 3u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows_of_table() {
        let cfg = PrecisionConfig::default();
        for (n, want) in [(1, 2.5741407781), (2, 2.8476422723), (-1, 2.4071698136)] {
            let a = find_alpha0(n, &cfg).unwrap();
            assert!((a.alpha0.to_f64() - want).abs() < 1e-9, "n = {n}: {}", a.alpha0.to_f64());
            assert!(a.derivative_residual < Float::with_val(64, Float::i_exp(1, -64)));
        }
    }
}
