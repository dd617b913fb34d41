use std::collections::HashMap;

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use super::longitude::longitude_l;
use super::quadrature::path_integral;
use crate::error::{Error, Result};
use crate::geometry::{ConeGeometry, PathSamples};
use crate::numeric::PrecisionConfig;

/// `log|L|` along a path.
pub fn log_abs_l(path: &PathSamples) -> Result<Vec<Float>> {
    path.x
        .iter()
        .zip(&path.alpha)
        .map(|(x, a)| {
            let l = longitude_l(x, a)?;
            Ok(Float::with_val(x.prec().0, l.abs_ref()).ln())
        })
        .collect()
}

/// `arg L` along a path, continued from `start` at the first sample.
/// Returns `None` if two neighbours differ by more than `pi / 2`.
pub fn unwrapped_arg_l(path: &PathSamples, start: &Float) -> Result<Option<Vec<Float>>> {
    let prec = path.h.prec();
    let pi = Float::with_val(prec, Constant::Pi);
    let two_pi = Float::with_val(prec, &pi * 2u32);
    let half_pi = Float::with_val(prec, &pi / 2u32);
    let mut out: Vec<Float> = Vec::with_capacity(path.len());
    for (x, a) in path.x.iter().zip(&path.alpha) {
        let l = longitude_l(x, a)?;
        let principal = Float::with_val(prec, l.arg_ref());
        let reference = out.last().unwrap_or(start);
        let mut d = Float::with_val(prec, &principal - reference);
        let turns = Float::with_val(prec, &d / &two_pi).round();
        d -= Float::with_val(prec, &turns * &two_pi);
        if out.is_empty() {
            // the first sample must sit on the anchor itself
            if Float::with_val(64, d.abs_ref()) > 1e-6 {
                return Ok(None);
            }
        } else if Float::with_val(prec, d.abs_ref()) > half_pi {
            return Ok(None);
        }
        out.push(Float::with_val(prec, reference + &d));
    }
    Ok(Some(out))
}

/// The constant `(7n + 3)/(8n + 1)` reduced into `[0, 1)`.
pub fn lens_cs(n: i64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidKnot("C(0,4) is not in the family".into()));
    }
    let r = Rational::from((Integer::from(7 * n + 3), Integer::from(8 * n + 1)));
    Ok(Rational::from(&r - r.clone().floor()))
}

/// `1/k` for even `k`, `1/(2k)` for odd `k`; `1/2` for the complete
/// structure (`k = None`).
pub fn cs_modulus(k: Option<u32>) -> Rational {
    match k {
        Some(k) if k % 2 == 0 => Rational::from((1, k)),
        Some(k) => Rational::from((1, 2 * k)),
        None => Rational::from((1, 2)),
    }
}

/// Representative of `raw` in `[0, modulus)`. A value within `snap` of
/// the modulus is taken as `0`.
pub fn reduce(raw: &Float, modulus: &Rational, snap: f64) -> Float {
    let prec = raw.prec();
    let m = Float::with_val(prec, modulus);
    let q = Float::with_val(prec, raw / &m).floor();
    let mut r = Float::with_val(prec, raw - Float::with_val(prec, &q * &m));
    if r < 0 {
        r += &m;
    }
    if r >= m || Float::with_val(prec, &m - &r) < snap {
        r = Float::new(prec);
    }
    r
}

/// Values closer than this to a multiple of the modulus are reported as `0`.
pub const SNAP: f64 = 1e-9;

/// A Chern-Simons value with its modulus and the grid that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantResult {
    pub value: Float,
    pub modulus: Rational,
    /// Simpson panels on the hyperbolic and on each spherical segment.
    pub panels: [usize; 2],
    pub bits: u32,
}

/// Volume and Chern-Simons integrals for one knot, sharing `alpha_0`, the
/// spherical integrals and the anchor of `arg L` between calls.
#[derive(Debug, Clone)]
pub struct Invariants {
    geo: ConeGeometry,
    anchor: Float,
    spherical: HashMap<usize, (Float, usize)>,
}

impl Invariants {
    pub fn new(geo: ConeGeometry) -> Result<Self> {
        let prec = geo.cfg().prec();
        let x0 = Complex::with_val(prec, (geo.x0(), 0));
        let l0 = longitude_l(&x0, geo.alpha0())?;
        let anchor = Float::with_val(prec, l0.arg_ref());
        Ok(Invariants { geo, anchor, spherical: HashMap::new() })
    }

    pub fn for_knot(n: i64, cfg: &PrecisionConfig) -> Result<Self> {
        Self::new(ConeGeometry::new(n, cfg)?)
    }

    pub fn geometry(&self) -> &ConeGeometry {
        &self.geo
    }

    pub fn n(&self) -> i64 {
        self.geo.n()
    }

    /// `arg L` at the double root; every path starts from this value.
    pub fn anchor(&self) -> &Float {
        &self.anchor
    }

    fn prec(&self) -> u32 {
        self.geo.cfg().prec()
    }

    /// `int_alpha^{alpha_0} log|L| d(alpha)`; zero at `alpha_0`.
    pub fn volume(&self, alpha: &Float, panels: usize) -> Result<Float> {
        if *alpha > *self.geo.alpha0() {
            return Err(Error::Regime(format!(
                "alpha = {} is above alpha_0 = {}; no hyperbolic structure",
                alpha.to_f64(),
                self.geo.alpha0().to_f64()
            )));
        }
        if *alpha == *self.geo.alpha0() {
            return Ok(Float::new(self.prec()));
        }
        let path = self.geo.hyperbolic_path(alpha, panels)?;
        path_integral(&path, &log_abs_l(&path)?)
    }

    /// `int arg L d(alpha)` over `path`, doubling the grid if the argument
    /// jumps between neighbours.
    fn arg_integral(&self, mut make: impl FnMut(usize) -> Result<PathSamples>, panels: usize) -> Result<(Float, usize)> {
        let mut p = panels;
        for _ in 0..4 {
            let path = make(p)?;
            if let Some(beta) = unwrapped_arg_l(&path, &self.anchor)? {
                return Ok((path_integral(&path, &beta)?, p));
            }
            p *= 2;
        }
        Err(Error::Geometry(format!("arg L is not continuous on a grid of {p} panels")))
    }

    fn spherical_sum(&mut self, panels: usize) -> Result<(Float, usize)> {
        if let Some(v) = self.spherical.get(&panels) {
            return Ok(v.clone());
        }
        let prec = self.prec();
        let t_end = Float::with_val(prec, self.geo.cfg().pi() - self.geo.alpha0()).sqrt();
        let geo = &self.geo;
        let mut total = Float::new(prec);
        let mut used = panels;
        for first in [true, false] {
            let side = crate::geometry::Side::Spherical(first);
            let (s, p) = self.arg_integral(|p| geo.path(side, &t_end, p), panels)?;
            total += s;
            used = used.max(p);
        }
        self.spherical.insert(panels, (total.clone(), used));
        Ok((total, used))
    }

    /// `1/2 lens + (2 I_h + S_1 + S_2) / 4 pi^2` before reduction.
    fn raw_cs(&mut self, lo: &Float, panels: usize) -> Result<(Float, [usize; 2])> {
        let prec = self.prec();
        let (s, ps) = self.spherical_sum(panels)?;
        let geo = &self.geo;
        let (h, ph) = self.arg_integral(|p| geo.hyperbolic_path(lo, p), panels)?;
        let mut sum = Float::with_val(prec, &h * 2u32);
        sum += &s;
        let pi = Float::with_val(prec, Constant::Pi);
        let four_pi2 = Float::with_val(prec, &pi * &pi) * 4u32;
        let lens = Float::with_val(prec, &lens_cs(self.n())?) / 2u32;
        Ok((lens + sum / four_pi2, [ph, ps]))
    }

    fn check_k(&self, k: u32) -> Result<Float> {
        let prec = self.prec();
        if k == 0 {
            return Err(Error::Config("k must be positive".into()));
        }
        let lo = Float::with_val(prec, Float::with_val(prec, Constant::Pi) * 2u32) / k;
        if lo >= *self.geo.alpha0() {
            return Err(Error::Regime(format!(
                "2 pi / {k} = {} is not below alpha_0 = {}",
                lo.to_f64(),
                self.geo.alpha0().to_f64()
            )));
        }
        Ok(lo)
    }

    /// Chern-Simons invariant of the cone-manifold with angle `2 pi / k`.
    pub fn chern_simons(&mut self, k: u32, panels: usize) -> Result<InvariantResult> {
        let lo = self.check_k(k)?;
        let (raw, grid) = self.raw_cs(&lo, panels)?;
        let modulus = cs_modulus(Some(k));
        Ok(InvariantResult { value: reduce(&raw, &modulus, SNAP), modulus, panels: grid, bits: self.geo.cfg().mantissa_bits })
    }

    /// The complete structure (`alpha -> 0`).
    pub fn chern_simons_complete(&mut self, panels: usize) -> Result<InvariantResult> {
        let lo = Float::new(self.prec());
        let (raw, grid) = self.raw_cs(&lo, panels)?;
        let modulus = cs_modulus(None);
        Ok(InvariantResult { value: reduce(&raw, &modulus, SNAP), modulus, panels: grid, bits: self.geo.cfg().mantissa_bits })
    }

    /// Volume and Chern-Simons invariant of the `k`-fold cyclic cover
    /// branched over the knot.
    pub fn cyclic_cover(&mut self, k: u32, panels: usize) -> Result<(Float, InvariantResult)> {
        let lo = self.check_k(k)?;
        let vol = self.volume(&lo, panels)? * k;
        let cs = self.chern_simons(k, panels)?;
        let modulus = Rational::from(1);
        let value = reduce(&Float::with_val(self.prec(), &cs.value * k), &modulus, SNAP);
        Ok((vol, InvariantResult { value, modulus, ..cs }))
    }
}

/// `int_alpha^{alpha_0(n)} log|L| d(alpha)`.
pub fn volume(n: i64, alpha: &Float, panels: usize, cfg: &PrecisionConfig) -> Result<Float> {
    if *alpha < 0 {
        return Err(Error::Config("cone angle must be nonnegative".into()));
    }
    Invariants::for_knot(n, cfg)?.volume(alpha, panels)
}

pub fn chern_simons(n: i64, k: u32, panels: usize, cfg: &PrecisionConfig) -> Result<InvariantResult> {
    Invariants::for_knot(n, cfg)?.chern_simons(k, panels)
}

pub fn chern_simons_complete(n: i64, panels: usize, cfg: &PrecisionConfig) -> Result<InvariantResult> {
    Invariants::for_knot(n, cfg)?.chern_simons_complete(panels)
}

pub fn cyclic_cover(n: i64, k: u32, panels: usize, cfg: &PrecisionConfig) -> Result<(Float, InvariantResult)> {
    Invariants::for_knot(n, cfg)?.cyclic_cover(k, panels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_values() {
        assert_eq!(lens_cs(1).unwrap(), Rational::from((1, 9)));
        assert_eq!(lens_cs(2).unwrap(), Rational::from(0));
        assert_eq!(lens_cs(-1).unwrap(), Rational::from((4, 7)));
        assert!(lens_cs(0).is_err());
    }

    #[test]
    fn moduli() {
        assert_eq!(cs_modulus(Some(4)), Rational::from((1, 4)));
        assert_eq!(cs_modulus(Some(5)), Rational::from((1, 10)));
        assert_eq!(cs_modulus(None), Rational::from((1, 2)));
    }

    #[test]
    fn reduction_range() {
        let m = Rational::from((1, 10));
        let r = reduce(&Float::with_val(128, -0.153), &m, SNAP);
        assert!((r.to_f64() - 0.047).abs() < 1e-15);
        let r = reduce(&Float::with_val(128, -1e-14), &m, SNAP);
        assert!(r.is_zero());
        let r = reduce(&Float::with_val(128, 0.3), &m, SNAP);
        assert!(r < 0.1);
    }
}
