use rug::Float;
use serde::{Deserialize, Serialize};

use super::integrals::InvariantResult;
use crate::numeric::{decimal, digits_for_bits};

/// One computed cell: `{"n", "k", "alpha0", "vol", "cs", "cs_modulus",
/// "bits", "panels", "version"}`. Reals are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub n: i64,
    pub k: Option<u32>,
    pub alpha0: String,
    pub vol: Option<String>,
    pub cs: Option<String>,
    pub cs_modulus: Option<String>,
    pub bits: u32,
    pub panels: [usize; 2],
    pub version: String,
}

impl ResultJson {
    pub fn new(n: i64, k: Option<u32>, alpha0: &Float, bits: u32) -> Self {
        ResultJson {
            n,
            k,
            alpha0: decimal(alpha0, digits_for_bits(bits)),
            vol: None,
            cs: None,
            cs_modulus: None,
            bits,
            panels: [0, 0],
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn with_volume(mut self, vol: &Float, panels: usize) -> Self {
        self.vol = Some(decimal(vol, digits_for_bits(self.bits)));
        if self.panels[0] == 0 {
            self.panels[0] = panels;
        }
        self
    }

    pub fn with_cs(mut self, cs: &InvariantResult) -> Self {
        self.cs = Some(decimal(&cs.value, digits_for_bits(self.bits)));
        self.cs_modulus = Some(format!("{}/{}", cs.modulus.numer(), cs.modulus.denom()));
        self.panels = cs.panels;
        self
    }
}
