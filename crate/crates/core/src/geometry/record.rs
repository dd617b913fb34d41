use rug::Float;
use serde::{Deserialize, Serialize};

use super::alpha0::Alpha0;
use crate::error::{Error, Result};
use crate::numeric::{decimal, digits_for_bits, PrecisionConfig};

/// Cached `alpha_0`: `{"n": n, "alpha0": "...", "bits": b, "tol": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alpha0Record {
    pub n: i64,
    pub alpha0: String,
    pub bits: u32,
    pub tol: String,
}

fn tol_string(cfg: &PrecisionConfig) -> String {
    decimal(&cfg.root_residual_tol, 17)
}

impl Alpha0Record {
    pub fn new(n: i64, a: &Alpha0, cfg: &PrecisionConfig) -> Self {
        Alpha0Record {
            n,
            alpha0: decimal(&a.alpha0, digits_for_bits(cfg.mantissa_bits)),
            bits: cfg.mantissa_bits,
            tol: tol_string(cfg),
        }
    }

    /// Whether this record was produced under exactly these settings.
    pub fn matches(&self, n: i64, cfg: &PrecisionConfig) -> bool {
        self.n == n && self.bits == cfg.mantissa_bits && self.tol == tol_string(cfg)
    }

    pub fn value(&self) -> Result<Float> {
        Float::parse(&self.alpha0)
            .map(|v| Float::with_val(self.bits.max(64), v))
            .map_err(|e| Error::Format(format!("bad alpha0 {:?}: {e}", self.alpha0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_coherence() {
        let cfg = PrecisionConfig::new(128).unwrap();
        let a = Alpha0 {
            alpha0: Float::with_val(128, 2.5741407781),
            x0: Float::with_val(128, 0.5),
            error_bound: Float::with_val(64, 1e-30),
            derivative_residual: Float::with_val(64, 1e-40),
        };
        let r = Alpha0Record::new(1, &a, &cfg);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with("{\"n\":1,\"alpha0\":\"2.574140778"));
        let back: Alpha0Record = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(back.matches(1, &cfg));
        assert!(!back.matches(2, &cfg));
        assert!(!back.matches(1, &PrecisionConfig::new(256).unwrap()));
        assert!(!back.matches(1, &PrecisionConfig::with_tolerances(128, 1e-10, 1e-5).unwrap()));
        assert!((back.value().unwrap().to_f64() - 2.5741407781).abs() < 1e-15);
    }
}
