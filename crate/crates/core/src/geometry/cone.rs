//! The geometric component of `C(2n,4)` as a function of the cone angle.
//!
//! Paths are parametrized by `t` with `alpha = alpha_0 -+ t^2`. The root is
//! analytic in `t` through the double root at `alpha_0`, so uniform grids
//! in `t` keep both continuation and Simpson's rule well behaved there.

use rug::{Complex, Float};

use super::alpha0::{alpha0_record, find_alpha0_with, polish_double_root, Alpha0};
use super::branch::{BranchSample, GeometricBranch, Regime};
use super::roots::{anchor_roots, newton, roots_with};
use crate::error::{Error, Result};
use crate::numeric::{cabs, unit_m, PrecisionConfig};
use crate::rm::eval::RmEvaluator;

/// Which side of `alpha_0` a path explores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `alpha < alpha_0`, the root with `Im(x) <= 0`.
    Hyperbolic,
    /// `alpha > alpha_0`; the flag picks one of the two real roots.
    Spherical(bool),
}

/// Samples of one root along a uniform `t`-grid.
#[derive(Debug, Clone)]
pub struct PathSamples {
    pub side: Side,
    /// Grid spacing in `t`.
    pub h: Float,
    pub t: Vec<Float>,
    pub alpha: Vec<Float>,
    pub x: Vec<Complex>,
}

impl PathSamples {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Per-`n` geometry: `alpha_0`, the double root and the local expansion
/// `x = x_0 + c t + O(t^2)` on each side.
#[derive(Debug, Clone)]
pub struct ConeGeometry {
    ev: RmEvaluator,
    cfg: PrecisionConfig,
    alpha0: Alpha0,
    /// `dx/dt` at `t = 0` for the hyperbolic path.
    hyp_dir: Complex,
    /// `dx/dt` at `t = 0` for the spherical path ending at the first anchor.
    sph_dir: Complex,
}

impl ConeGeometry {
    pub fn new(n: i64, cfg: &PrecisionConfig) -> Result<Self> {
        let ev = RmEvaluator::new(n)?;
        let a0 = find_alpha0_with(&ev, cfg)?;
        Self::assemble(ev, cfg, a0)
    }

    /// Builds the geometry around a previously computed `alpha_0`. The
    /// double root is re-polished at the current precision from the closest
    /// pair of roots at that angle; if the polish does not land back on the
    /// given angle, `alpha_0` is recomputed from scratch.
    pub fn with_alpha0(n: i64, alpha0: &Float, cfg: &PrecisionConfig) -> Result<Self> {
        let ev = RmEvaluator::new(n)?;
        let prec = cfg.prec();
        let alpha = Float::with_val(prec, alpha0);
        let roots = roots_with(&ev, &alpha, cfg)?;
        let mut best: Option<(Float, Float)> = None;
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                let d = cabs(&Complex::with_val(prec, a - b));
                if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                    let mid = Float::with_val(prec, Float::with_val(prec, a.real() + b.real()) / 2u32);
                    best = Some((d, mid));
                }
            }
        }
        if let Some((_, guess)) = best {
            if let Some((a, x, err)) = polish_double_root(&ev, &guess, &alpha, cfg) {
                if Float::with_val(64, &a - &alpha).abs() < 1e-8 {
                    let a0 = alpha0_record(&ev, a, x, err);
                    return Self::assemble(ev, cfg, a0);
                }
            }
        }
        ConeGeometry::new(n, cfg)
    }

    fn assemble(ev: RmEvaluator, cfg: &PrecisionConfig, alpha0: Alpha0) -> Result<Self> {
        let prec = cfg.prec();
        let x0 = Complex::with_val(prec, (&alpha0.x0, 0));
        let j = ev.alpha_jet(&x0, &alpha0.alpha0);
        // P_a s + P_xx d^2 / 2 = 0 with s = +-t^2
        let r = Complex::with_val(prec, -2 * Complex::with_val(prec, &j.a / &j.xx));
        let sph = Complex::with_val(prec, r.sqrt_ref());
        let mut hyp = Complex::with_val(prec, (-r).sqrt());
        if *hyp.imag() > 0 {
            hyp = -hyp;
        }
        let mut geo = ConeGeometry { ev, cfg: cfg.clone(), alpha0, hyp_dir: hyp, sph_dir: sph };
        // orient the spherical direction towards the first anchor
        let first = geo.spherical_end(true, 64)?;
        let (a1, a2) = anchor_roots(geo.n(), prec)?;
        let d1 = cabs(&Complex::with_val(prec, &first - &a1));
        let d2 = cabs(&Complex::with_val(prec, &first - &a2));
        if d1 > d2 {
            geo.sph_dir = -geo.sph_dir;
        }
        Ok(geo)
    }

    pub fn n(&self) -> i64 {
        self.ev.n()
    }

    pub fn cfg(&self) -> &PrecisionConfig {
        &self.cfg
    }

    pub fn evaluator(&self) -> &RmEvaluator {
        &self.ev
    }

    pub fn alpha0(&self) -> &Float {
        &self.alpha0.alpha0
    }

    pub fn alpha0_info(&self) -> &Alpha0 {
        &self.alpha0
    }

    /// The real double root at `alpha_0`.
    pub fn x0(&self) -> &Float {
        &self.alpha0.x0
    }

    fn direction(&self, side: Side) -> Complex {
        match side {
            Side::Hyperbolic => self.hyp_dir.clone(),
            Side::Spherical(true) => self.sph_dir.clone(),
            Side::Spherical(false) => Complex::with_val(self.cfg.prec(), -&self.sph_dir),
        }
    }

    fn alpha_of(&self, side: Side, t: &Float) -> Float {
        let prec = self.cfg.prec();
        let t2 = Float::with_val(prec, t * t);
        match side {
            Side::Hyperbolic => Float::with_val(prec, self.alpha0() - t2),
            Side::Spherical(_) => Float::with_val(prec, self.alpha0() + t2),
        }
    }

    /// `dx/dt` at `(x, t)` from the implicit function theorem.
    fn tangent(&self, side: Side, x: &Complex, t: &Float) -> Option<Complex> {
        let prec = self.cfg.prec();
        let alpha = self.alpha_of(side, t);
        let j = self.ev.alpha_jet(x, &alpha);
        if j.x.is_zero() {
            return None;
        }
        let mut dadt = Float::with_val(prec, t * 2u32);
        if side == Side::Hyperbolic {
            dadt = -dadt;
        }
        let pt = Complex::with_val(prec, &j.a * &dadt);
        Some(Complex::with_val(prec, -(pt / &j.x)))
    }

    fn side_ok(&self, side: Side, x: &Complex) -> bool {
        let scale = cabs(x).max(&Float::with_val(self.cfg.prec(), 1));
        let slack = Float::with_val(64, &self.cfg.collision_tol * &scale);
        match side {
            Side::Hyperbolic => *x.imag() <= slack,
            Side::Spherical(_) => Float::with_val(64, x.imag().abs_ref()) <= slack,
        }
    }

    /// Newton-corrects `pred` at parameter `t`, accepting the result only
    /// if the correction is small against `step` (the expected increment).
    fn correct(&self, side: Side, pred: &Complex, t: &Float, step: &Float) -> Option<Complex> {
        let prec = self.cfg.prec();
        let alpha = self.alpha_of(side, t);
        let x = newton(&self.ev, pred, &unit_m(&alpha), &self.cfg)?;
        let moved = cabs(&Complex::with_val(prec, &x - pred));
        (moved <= Float::with_val(64, step * 0.25f64) && self.side_ok(side, &x)).then_some(x)
    }

    /// Advances from `(t0, x0)` to `t1` through `2^k` tangent-predicted
    /// substeps, refining `k` until every substep is accepted.
    fn advance(&self, side: Side, t0: &Float, x0: &Complex, t1: &Float) -> Option<Complex> {
        let prec = self.cfg.prec();
        'depth: for depth in 1..=14u32 {
            let parts = 1u32 << depth;
            let dt = Float::with_val(prec, t1 - t0) / parts;
            let mut t = t0.clone();
            let mut x = x0.clone();
            for _ in 0..parts {
                let slope = if t.is_zero() { self.direction(side) } else { match self.tangent(side, &x, &t) {
                    Some(s) => s,
                    None => continue 'depth,
                } };
                let inc = Complex::with_val(prec, &slope * &dt);
                let pred = Complex::with_val(prec, &x + &inc);
                let tn = Float::with_val(prec, &t + &dt);
                let size = cabs(&inc).max(&Float::with_val(64, Float::i_exp(1, -(prec as i32) / 2)));
                match self.correct(side, &pred, &tn, &size) {
                    Some(xn) => {
                        x = xn;
                        t = tn;
                    }
                    None => continue 'depth,
                }
            }
            return Some(x);
        }
        None
    }

    /// The root along `t_i = i t_end / (2 panels)`, `i = 0..=2 panels`.
    pub fn path(&self, side: Side, t_end: &Float, panels: usize) -> Result<PathSamples> {
        if panels == 0 {
            return Err(Error::Config("panels must be positive".into()));
        }
        let prec = self.cfg.prec();
        let count = 2 * panels;
        let h = Float::with_val(prec, t_end / count as u32);
        let mut ts = Vec::with_capacity(count + 1);
        let mut alphas = Vec::with_capacity(count + 1);
        let mut xs: Vec<Complex> = Vec::with_capacity(count + 1);
        let dir = self.direction(side);
        for i in 0..=count {
            let t = Float::with_val(prec, &h * i as u32);
            let alpha = self.alpha_of(side, &t);
            let x = if i == 0 {
                Complex::with_val(prec, (self.x0(), 0))
            } else {
                let pred = match i {
                    1 => Complex::with_val(prec, &xs[0] + Complex::with_val(prec, &dir * &t)),
                    2 => Complex::with_val(prec, &xs[1] * 2u32) - &xs[0],
                    _ => {
                        let mut p = Complex::with_val(prec, &xs[i - 1] - &xs[i - 2]);
                        p *= 3u32;
                        p += &xs[i - 3];
                        p
                    }
                };
                let step = if i == 1 {
                    cabs(&Complex::with_val(prec, &dir * &h))
                } else {
                    cabs(&Complex::with_val(prec, &xs[i - 1] - &xs[i - 2]))
                };
                let step = step.max(&Float::with_val(64, Float::i_exp(1, -(prec as i32) / 2)));
                match self.correct(side, &pred, &t, &step) {
                    Some(x) => x,
                    None => self.advance(side, &ts[i - 1], &xs[i - 1], &t).ok_or(Error::Divergence { alpha: alpha.to_f64() })?,
                }
            };
            ts.push(t);
            alphas.push(alpha);
            xs.push(x);
        }
        Ok(PathSamples { side, h, t: ts, alpha: alphas, x: xs })
    }

    /// Hyperbolic path from `alpha_0` down to `lo`.
    pub fn hyperbolic_path(&self, lo: &Float, panels: usize) -> Result<PathSamples> {
        if *lo > *self.alpha0() || *lo < 0 {
            return Err(Error::Regime(format!(
                "lower end {} outside [0, alpha_0 = {}]",
                lo.to_f64(),
                self.alpha0().to_f64()
            )));
        }
        let t_end = Float::with_val(self.cfg.prec(), self.alpha0() - lo).sqrt();
        self.path(Side::Hyperbolic, &t_end, panels)
    }

    /// Spherical paths from `alpha_0` to `pi`, first the one reaching the
    /// first anchor, then the one reaching the second.
    pub fn spherical_paths(&self, panels: usize) -> Result<(PathSamples, PathSamples)> {
        let t_end = Float::with_val(self.cfg.prec(), self.cfg.pi() - self.alpha0()).sqrt();
        Ok((self.path(Side::Spherical(true), &t_end, panels)?, self.path(Side::Spherical(false), &t_end, panels)?))
    }

    fn spherical_end(&self, first: bool, panels: usize) -> Result<Complex> {
        let t_end = Float::with_val(self.cfg.prec(), self.cfg.pi() - self.alpha0()).sqrt();
        let p = self.path(Side::Spherical(first), &t_end, panels)?;
        Ok(p.x.last().expect("path has samples").clone())
    }

    /// The two real roots continued from the anchors, for `alpha_0 < alpha <= pi`.
    pub fn spherical_pair(&self, alpha: &Float) -> Result<(Float, Float)> {
        if *alpha <= *self.alpha0() {
            return Err(Error::Regime(format!(
                "alpha = {} is not above alpha_0 = {}",
                alpha.to_f64(),
                self.alpha0().to_f64()
            )));
        }
        if *alpha > self.cfg.pi() {
            return Err(Error::Config("cone angle above pi".into()));
        }
        let t = Float::with_val(self.cfg.prec(), alpha - self.alpha0()).sqrt();
        let a = self.path(Side::Spherical(true), &t, 16)?;
        let b = self.path(Side::Spherical(false), &t, 16)?;
        let re = |p: &PathSamples| Float::with_val(self.cfg.prec(), p.x.last().expect("path has samples").real());
        Ok((re(&a), re(&b)))
    }

    /// The geometric root at `alpha` in `[0, alpha_0]`, with `Im(x) <= 0`.
    pub fn hyperbolic_x(&self, alpha: &Float) -> Result<Complex> {
        let p = self.hyperbolic_path(alpha, 16)?;
        Ok(p.x.last().expect("path has samples").clone())
    }

    /// The branch anchored at the first anchor at `pi`, through `alpha_0`
    /// down to `lo`, with `panels` Simpson panels on each side.
    pub fn geometric_branch(&self, lo: &Float, panels: usize) -> Result<GeometricBranch> {
        let prec = self.cfg.prec();
        let t_end = Float::with_val(prec, self.cfg.pi() - self.alpha0()).sqrt();
        let sph = self.path(Side::Spherical(true), &t_end, panels)?;
        let hyp = self.hyperbolic_path(lo, panels)?;
        let mut samples = Vec::with_capacity(sph.len() + hyp.len());
        for (a, x) in sph.alpha.iter().zip(&sph.x).rev() {
            let real = Complex::with_val(prec, (x.real(), 0));
            samples.push(BranchSample::new(a.clone(), real, Regime::Spherical));
        }
        if let Some(s) = samples.last_mut() {
            s.regime = Regime::Euclidean;
        }
        for (a, x) in hyp.alpha.iter().zip(&hyp.x).skip(1) {
            samples.push(BranchSample::new(a.clone(), x.clone(), Regime::Hyperbolic));
        }
        Ok(GeometricBranch::new(self.n(), samples, Some(self.alpha0().clone())))
    }
}
