//! Fixed-precision complex numerics: precision policy, polynomials,
//! 2x2 matrices and the all-roots solver.

pub mod aberth;
pub mod cmat;
pub mod cpoly;
pub mod precision;

pub use aberth::{all_roots, newton_polish};
pub use cmat::{CMatrix2, GeneratorImages};
pub use cpoly::CPoly;
pub use precision::{cabs, cabs_f64, decimal, digits_for_bits, unit_m, PrecisionConfig, DEFAULT_BITS};
