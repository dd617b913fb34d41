//! Riley-Mednykh polynomials: exact Laurent arithmetic, the recursion for
//! `C(2n,4)`, the symbolic trace oracle and the numeric evaluator for
//! general slopes.

pub mod bivar;
pub mod eval;
pub mod family;
pub mod general;
pub mod laurent;
pub mod matrix;

pub use bivar::{BivarPoly, BivarPolyJson};
pub use family::{q_poly, rm_c2n4, trace_ratio_c2n4};
pub use laurent::{LaurentInt, MPowers};
pub use matrix::{MeridianPair, RationalFunction, SymMatrix2};
pub use eval::{AlphaJet, Jet, RmEvaluator};
pub use general::{coordinate_bridge, rm_general_value, trace_ratio_value, GeneralRepParams};
