use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};

pub const DEFAULT_BITS: u32 = 256;

/// Working precision and the tolerances derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionConfig {
    pub mantissa_bits: u32,
    /// Relative residual a root must reach: `|P(x)| <= tol * sum |a_j||x|^j`.
    pub root_residual_tol: Float,
    /// Threshold below which two roots (or an imaginary part) count as merged.
    pub collision_tol: Float,
}

impl PrecisionConfig {
    /// Defaults: residual `2^(-bits/2)`, collision `2^(-bits/4)`.
    pub fn new(mantissa_bits: u32) -> Result<Self> {
        if mantissa_bits < 64 {
            return Err(Error::Config(format!("mantissa_bits must be >= 64, got {mantissa_bits}")));
        }
        let pow2 = |e: i32| Float::with_val(64, Float::i_exp(1, e));
        Ok(PrecisionConfig {
            mantissa_bits,
            root_residual_tol: pow2(-(mantissa_bits as i32) / 2),
            collision_tol: pow2(-(mantissa_bits as i32) / 4),
        })
    }

    pub fn with_tolerances(mantissa_bits: u32, root_residual_tol: f64, collision_tol: f64) -> Result<Self> {
        let mut cfg = PrecisionConfig::new(mantissa_bits)?;
        for (name, v) in [("root_residual_tol", root_residual_tol), ("collision_tol", collision_tol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        cfg.root_residual_tol = Float::with_val(64, root_residual_tol);
        cfg.collision_tol = Float::with_val(64, collision_tol);
        Ok(cfg)
    }

    pub fn prec(&self) -> u32 {
        self.mantissa_bits
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.mantissa_bits, v)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.mantissa_bits, (re, im))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.mantissa_bits, Constant::Pi)
    }

    /// `2^(-bits + slack)`, the size of a correction considered converged.
    pub fn epsilon(&self, slack: i32) -> Float {
        Float::with_val(64, Float::i_exp(1, -(self.mantissa_bits as i32) + slack))
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig::new(DEFAULT_BITS).expect("default precision is valid")
    }
}

/// `|z|` as a `Float` at the precision of `z`.
pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

pub fn cabs_f64(z: &Complex) -> f64 {
    cabs(z).to_f64()
}

/// `e^{i alpha / 2}`.
pub fn unit_m(alpha: &Float) -> Complex {
    let prec = alpha.prec();
    let half = Float::with_val(prec, alpha / 2u32);
    let (s, c) = half.sin_cos(Float::new(prec));
    Complex::with_val(prec, (c, s))
}

pub fn to_c64(z: &Complex) -> (f64, f64) {
    (z.real().to_f64(), z.imag().to_f64())
}

/// Decimal string carrying `digits` significant digits, fixed formatting.
pub fn decimal(v: &Float, digits: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let s = v.to_string_radix(10, Some(digits.max(1)));
    tidy_exponent(&s)
}

fn tidy_exponent(s: &str) -> String {
    // rug prints e.g. "2.574140778e0"; expand to plain fixed notation.
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: String = format!("{int}{frac}");
    let point = int.len() as i64 + exp;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(point as usize);
        format!("{a}.{b}")
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Number of significant decimal digits carried by `bits` of mantissa.
pub fn digits_for_bits(bits: u32) -> usize {
    ((bits as f64) / std::f64::consts::LOG2_10).floor() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cfg = PrecisionConfig::default();
        assert_eq!(cfg.mantissa_bits, 256);
        assert_eq!(cfg.root_residual_tol, Float::with_val(64, Float::i_exp(1, -128)));
        assert_eq!(cfg.collision_tol, Float::with_val(64, Float::i_exp(1, -64)));
        assert!(PrecisionConfig::new(32).is_err());
        assert!(PrecisionConfig::with_tolerances(128, 1.5, 1e-3).is_err());
        assert!(PrecisionConfig::with_tolerances(128, 1e-20, 1e-5).is_ok());
    }

    #[test]
    fn decimal_formatting() {
        let f = |v: f64| Float::with_val(128, v);
        assert_eq!(decimal(&f(2.5741407781), 11), "2.5741407781");
        assert_eq!(decimal(&f(0.0015), 4), "0.0015");
        assert_eq!(decimal(&f(-12.5), 6), "-12.5");
        assert_eq!(decimal(&f(1500.0), 6), "1500");
        assert_eq!(decimal(&f(0.0), 6), "0");
        assert_eq!(digits_for_bits(256), 77);
    }

    #[test]
    fn decimal_round_trips_at_declared_digits() {
        let cfg = PrecisionConfig::default();
        let x = Float::with_val(256, cfg.pi() / 7u32);
        let d = digits_for_bits(256);
        let s = decimal(&x, d);
        let back = Float::with_val(256, Float::parse(&s).unwrap());
        let rel = Float::with_val(256, &back - &x).abs() / &x;
        assert!(rel.to_f64() < 10f64.powi(-(d as i32) + 1));
    }
}
