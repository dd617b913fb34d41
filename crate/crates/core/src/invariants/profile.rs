use rug::{Complex, Float};

use super::integrals::{log_abs_l, unwrapped_arg_l, Invariants};
use super::quadrature::path_integral;
use crate::error::{Error, Result};
use crate::geometry::{Regime, Side};
use crate::numeric::{decimal, digits_for_bits};

/// One row of plotting data along the geometric branch.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub alpha: Float,
    pub x: Complex,
    pub log_abs_l: Float,
    pub l_alpha: Float,
    /// `int_alpha^pi log|L| d(alpha)`.
    pub vol_partial: Float,
    /// Continuous `arg L`.
    pub beta: Float,
    pub regime: Regime,
}

pub const PROFILE_HEADER: &str = "alpha,re_x,im_x,log_abs_L,l_alpha,vol_partial,beta,regime";

impl Invariants {
    /// The branch sampled at `points` equally spaced angles in
    /// `[from, to]`, each reached by its own path of `panels` panels.
    pub fn profile(&self, from: &Float, to: &Float, points: usize, panels: usize) -> Result<Vec<ProfileRow>> {
        let geo = self.geometry();
        let cfg = geo.cfg();
        let prec = cfg.prec();
        if !(*from > 0 && from <= to && *to <= cfg.pi()) {
            return Err(Error::Config("profile grid must lie in (0, pi] with from <= to".into()));
        }
        if points == 0 {
            return Err(Error::Config("profile needs at least one point".into()));
        }
        let step = if points > 1 { Float::with_val(prec, to - from) / (points - 1) as u32 } else { Float::new(prec) };
        let anchor = self.anchor();
        let mut rows = Vec::with_capacity(points);
        for j in 0..points {
            let alpha = if j + 1 == points { Float::with_val(prec, to) } else { Float::with_val(prec, &step * j as u32) + from };
            let below = alpha < *geo.alpha0();
            let dist = Float::with_val(prec, geo.alpha0() - &alpha).abs();
            let path = geo.path(if below { Side::Hyperbolic } else { Side::Spherical(true) }, &dist.sqrt(), panels)?;
            let logs = log_abs_l(&path)?;
            let beta = unwrapped_arg_l(&path, anchor)?
                .ok_or_else(|| Error::Geometry(format!("arg L jumps on the way to alpha = {}", alpha.to_f64())))?;
            let vol_partial = if below { path_integral(&path, &logs)? } else { Float::new(prec) };
            let last = path.len() - 1;
            let regime = if alpha == *geo.alpha0() {
                Regime::Euclidean
            } else if below {
                Regime::Hyperbolic
            } else {
                Regime::Spherical
            };
            let mut x = path.x[last].clone();
            let mut log_abs_l = logs[last].clone();
            if !below {
                // real root, |L| = 1
                x = Complex::with_val(prec, (x.real(), 0));
                log_abs_l = Float::new(prec);
            }
            rows.push(ProfileRow {
                l_alpha: Float::with_val(prec, &log_abs_l * 2u32),
                x,
                log_abs_l,
                vol_partial,
                beta: beta[last].clone(),
                regime,
                alpha,
            });
        }
        Ok(rows)
    }
}

pub fn profile_csv(rows: &[ProfileRow], digits: usize) -> String {
    let mut out = String::from(PROFILE_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [&r.alpha, r.x.real(), r.x.imag(), &r.log_abs_l, &r.l_alpha, &r.vol_partial, &r.beta];
        let text: Vec<String> = cells.iter().map(|v| decimal(v, digits)).collect();
        out.push_str(&text.join(","));
        out.push(',');
        out.push_str(&r.regime.to_string());
        out.push('\n');
    }
    out
}

/// [`profile_csv`] at the digit count matching `bits`.
pub fn profile_csv_for_bits(rows: &[ProfileRow], bits: u32) -> String {
    profile_csv(rows, digits_for_bits(bits))
}
