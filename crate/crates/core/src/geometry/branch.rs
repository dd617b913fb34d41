use std::fmt;
use std::str::FromStr;

use rug::{Complex, Float};

use super::alpha0::{find_alpha0_with, polish_double_root};
use super::roots::newton;
use crate::error::{Error, Result};
use crate::numeric::{cabs, decimal, digits_for_bits, unit_m, PrecisionConfig};
use crate::rm::eval::RmEvaluator;

/// Geometry of the cone-manifold at a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Hyperbolic,
    Euclidean,
    Spherical,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Hyperbolic => "hyperbolic",
            Regime::Euclidean => "euclidean",
            Regime::Spherical => "spherical",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperbolic" => Ok(Regime::Hyperbolic),
            "euclidean" => Ok(Regime::Euclidean),
            "spherical" => Ok(Regime::Spherical),
            other => Err(Error::Format(format!("unknown regime {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchSample {
    pub alpha: Float,
    pub x: Complex,
    pub regime: Regime,
}

impl BranchSample {
    pub fn new(alpha: Float, x: Complex, regime: Regime) -> Self {
        BranchSample { alpha, x, regime }
    }
}

/// A continuation path `alpha -> x(alpha)` of one root of `P_2n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricBranch {
    pub n: i64,
    pub samples: Vec<BranchSample>,
    /// Where the tracked root met its partner, if it did.
    pub collision: Option<Float>,
}

impl GeometricBranch {
    pub fn new(n: i64, samples: Vec<BranchSample>, collision: Option<Float>) -> Self {
        GeometricBranch { n, samples, collision }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&BranchSample> {
        self.samples.last()
    }

    /// CSV with header `alpha,re_x,im_x,regime`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,re_x,im_x,regime\n");
        for s in &self.samples {
            let digits = digits_for_bits(s.alpha.prec());
            out.push_str(&format!(
                "{},{},{},{}\n",
                decimal(&s.alpha, digits),
                decimal(s.x.real(), digits),
                decimal(s.x.imag(), digits),
                s.regime
            ));
        }
        out
    }

    pub fn from_csv(n: i64, text: &str, prec: u32) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("alpha,re_x,im_x,regime") {
            return Err(Error::Format("missing branch CSV header".into()));
        }
        let parse = |s: &str| -> Result<Float> {
            Float::parse(s.trim())
                .map(|v| Float::with_val(prec, v))
                .map_err(|e| Error::Format(format!("bad number {s:?}: {e}")))
        };
        let mut samples = Vec::new();
        let mut collision = None;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 4 {
                return Err(Error::Format(format!("expected 4 columns: {line:?}")));
            }
            let alpha = parse(cols[0])?;
            let x = Complex::with_val(prec, (parse(cols[1])?, parse(cols[2])?));
            let regime: Regime = cols[3].trim().parse()?;
            if regime == Regime::Euclidean {
                collision = Some(alpha.clone());
            }
            samples.push(BranchSample::new(alpha, x, regime));
        }
        Ok(GeometricBranch::new(n, samples, collision))
    }
}

fn imag_tol(x: &Complex, cfg: &PrecisionConfig) -> Float {
    let scale = cabs(x).max(&Float::with_val(64, 1));
    Float::with_val(64, &cfg.collision_tol * scale)
}

fn is_real(x: &Complex, cfg: &PrecisionConfig) -> bool {
    Float::with_val(64, x.imag().abs_ref()) <= imag_tol(x, cfg)
}

/// Keeps the branch on `Im(x) <= 0`; for `|M| = 1` the conjugate of a
/// root is again a root.
fn lower(x: Complex, cfg: &PrecisionConfig) -> Complex {
    if *x.imag() > imag_tol(&x, cfg) {
        x.conj()
    } else {
        x
    }
}

/// Predictor-corrector continuation of the root `start` of
/// `P_2n(., e^{i alpha_from / 2})` to `alpha_to` in `steps` equal steps.
///
/// Steps are halved when the corrector fails or jumps. When a real root
/// leaves the real axis the collision angle is located and recorded and the
/// root with `Im(x) <= 0` is followed. If halving underflows at a double
/// root the branch ends there and the collision is reported.
pub fn continue_branch(
    n: i64,
    start: &Complex,
    alpha_from: &Float,
    alpha_to: &Float,
    steps: usize,
    cfg: &PrecisionConfig,
) -> Result<GeometricBranch> {
    let ev = RmEvaluator::new(n)?;
    let prec = cfg.prec();
    let pi = cfg.pi();
    for a in [alpha_from, alpha_to] {
        if !(*a > 0 && *a <= pi) {
            return Err(Error::Config(format!("cone angle {} outside (0, pi]", a.to_f64())));
        }
    }
    let from = Float::with_val(prec, alpha_from);
    let to = Float::with_val(prec, alpha_to);
    let x_start = newton(&ev, &Complex::with_val(prec, start), &unit_m(&from), cfg)
        .ok_or(Error::Divergence { alpha: from.to_f64() })?;
    let regime_of = |x: &Complex| if is_real(x, cfg) { Regime::Spherical } else { Regime::Hyperbolic };
    let mut samples = vec![BranchSample::new(from.clone(), x_start.clone(), regime_of(&x_start))];
    let mut collision = None;
    if from == to || steps == 0 {
        return Ok(GeometricBranch::new(n, samples, collision));
    }

    let full = Float::with_val(prec, &to - &from) / steps as u32;
    let min_step = Float::with_val(64, Float::i_exp(1, -(prec as i32) / 4));
    let mut alpha = from.clone();
    let mut x = x_start;
    let mut prev: Option<(Float, Complex)> = None;
    let mut last_h: Option<Float> = None;
    for k in 1..=steps {
        let target = if k == steps { to.clone() } else { Float::with_val(prec, &full * k as u32) + &from };
        while alpha != target {
            let mut h = Float::with_val(prec, &target - &alpha);
            if let Some(last) = &last_h {
                let cap = Float::with_val(prec, last * 2u32);
                if Float::with_val(prec, h.abs_ref()) > cap {
                    h = if h < 0 { -cap } else { cap };
                }
            }
            let accepted = loop {
                let next = Float::with_val(prec, &alpha + &h);
                let pred = match &prev {
                    Some((pa, px)) if !px.imag().is_zero() || is_real(&x, cfg) => {
                        let ratio = Float::with_val(prec, &h / Float::with_val(prec, &alpha - pa));
                        let d = Complex::with_val(prec, &x - px);
                        Complex::with_val(prec, &x + d * ratio)
                    }
                    _ => x.clone(),
                };
                let bound = cabs(&Complex::with_val(prec, &pred - &x)).max(&Float::with_val(64, Float::i_exp(1, -20)));
                if let Some(y) = newton(&ev, &pred, &unit_m(&next), cfg) {
                    let moved = cabs(&Complex::with_val(prec, &y - &pred));
                    if moved <= Float::with_val(64, &bound * 0.5f64) {
                        break Some((next, y));
                    }
                }
                h /= 2u32;
                if Float::with_val(64, h.abs_ref()) < min_step {
                    break None;
                }
            };
            let Some((next, y)) = accepted else {
                // stalled at a double root: locate it and step across
                let guess = Float::with_val(prec, x.real());
                let Some((a0, x0, _)) = polish_double_root(&ev, &guess, &alpha, cfg) else {
                    if let Some(s) = samples.last_mut() {
                        s.regime = Regime::Euclidean;
                    }
                    return Ok(GeometricBranch::new(n, samples, Some(alpha)));
                };
                let Some((after, y)) = cross_double_root(&ev, &a0, &x0, &target, cfg) else {
                    samples.push(BranchSample::new(a0.clone(), Complex::with_val(prec, (&x0, 0)), Regime::Euclidean));
                    return Ok(GeometricBranch::new(n, samples, Some(a0)));
                };
                if collision.is_none() {
                    samples.push(BranchSample::new(a0.clone(), Complex::with_val(prec, (&x0, 0)), Regime::Euclidean));
                    collision = Some(a0);
                }
                prev = None;
                last_h = None;
                alpha = after;
                x = lower(y, cfg);
                continue;
            };
            let crossed = is_real(&x, cfg) && !is_real(&y, cfg) && next < alpha;
            if crossed && collision.is_none() {
                let guess = Float::with_val(prec, x.real());
                let polished = polish_double_root(&ev, &guess, &alpha, cfg)
                    .filter(|(a, _, _)| *a <= alpha && *a >= next);
                let (a0, x0) = match polished {
                    Some((a, x0, _)) => (a, x0),
                    None => {
                        let r = find_alpha0_with(&ev, cfg)?;
                        (r.alpha0, r.x0)
                    }
                };
                if a0 <= alpha && a0 >= next {
                    samples.push(BranchSample::new(a0.clone(), Complex::with_val(prec, (&x0, 0)), Regime::Euclidean));
                    collision = Some(a0);
                }
            }
            let y = lower(y, cfg);
            last_h = Some(Float::with_val(prec, &next - &alpha).abs());
            prev = Some((alpha.clone(), x.clone()));
            alpha = next;
            x = y;
        }
        samples.push(BranchSample::new(alpha.clone(), x.clone(), regime_of(&x)));
    }
    Ok(GeometricBranch::new(n, samples, collision))
}

/// A root just past the double root `(a0, x0)` in the direction of
/// `target`, from `d^2 = -2 P_a s / P_xx` with `s = alpha - a0`.
fn cross_double_root(ev: &RmEvaluator, a0: &Float, x0: &Float, target: &Float, cfg: &PrecisionConfig) -> Option<(Float, Complex)> {
    let prec = cfg.prec();
    let gap = Float::with_val(prec, target - a0);
    let room = Float::with_val(prec, gap.abs_ref());
    let mut s = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 8)).min(&room);
    if s.is_zero() {
        return None;
    }
    if gap < 0 {
        s = -s;
    }
    let c0 = Complex::with_val(prec, (x0, 0));
    let j = ev.alpha_jet(&c0, a0);
    let d2 = Complex::with_val(prec, -2 * Complex::with_val(prec, &j.a / &j.xx)) * &s;
    let d = Complex::with_val(prec, d2.sqrt_ref());
    let alpha = Float::with_val(prec, a0 + &s);
    let m = unit_m(&alpha);
    let mut pick: Option<Complex> = None;
    for sign in [1i32, -1] {
        let guess = Complex::with_val(prec, &c0 + Complex::with_val(prec, &d * sign));
        if let Some(y) = newton(ev, &guess, &m, cfg) {
            let better = match &pick {
                None => true,
                Some(p) => *y.imag() < *p.imag(),
            };
            if better {
                pick = Some(y);
            }
        }
    }
    pick.map(|y| (alpha, y))
}
