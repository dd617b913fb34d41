use rug::Float;

use crate::error::{Error, Result};
use crate::geometry::PathSamples;

/// Composite Simpson's rule on an odd number of equally spaced samples.
pub fn simpson(values: &[Float], h: &Float) -> Result<Float> {
    let len = values.len();
    if len < 3 || len % 2 == 0 {
        return Err(Error::Config(format!("Simpson's rule needs an odd sample count >= 3, got {len}")));
    }
    let prec = values[0].prec().max(h.prec());
    let mut odd = Float::new(prec);
    let mut even = Float::new(prec);
    for (i, v) in values.iter().enumerate().take(len - 1).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    let mut s = Float::with_val(prec, &values[0] + &values[len - 1]);
    s += Float::with_val(prec, &odd * 4u32);
    s += Float::with_val(prec, &even * 2u32);
    Ok(s * h / 3u32)
}

/// `int f d(alpha)` over a path, as `int f(alpha(t)) 2t dt`. The
/// orientation runs from the lower to the upper cone angle.
pub fn path_integral(path: &PathSamples, f: &[Float]) -> Result<Float> {
    if f.len() != path.len() {
        return Err(Error::Config("integrand length does not match the path".into()));
    }
    let weighted: Vec<Float> = f
        .iter()
        .zip(&path.t)
        .map(|(v, t)| Float::with_val(v.prec(), v * t) * 2u32)
        .collect();
    simpson(&weighted, &path.h)
}

/// Running values of `int_{t_0}^{t_j} f 2t dt` at the even nodes, by
/// Simpson on each double panel.
pub fn cumulative_path_integral(path: &PathSamples, f: &[Float]) -> Result<Vec<Float>> {
    if f.len() != path.len() || path.len() % 2 == 0 {
        return Err(Error::Config("integrand length does not match the path".into()));
    }
    let prec = path.h.prec();
    let w: Vec<Float> = f.iter().zip(&path.t).map(|(v, t)| Float::with_val(prec, v * t) * 2u32).collect();
    let mut acc = Float::new(prec);
    let mut out = vec![acc.clone()];
    for j in (0..w.len() - 1).step_by(2) {
        let mut s = Float::with_val(prec, &w[j] + &w[j + 2]);
        s += Float::with_val(prec, &w[j + 1] * 4u32);
        acc += s * &path.h / 3u32;
        out.push(acc.clone());
    }
    Ok(out)
}
