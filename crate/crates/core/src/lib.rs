//! Riley-Mednykh polynomials, cone-manifold volumes and Chern-Simons
//! invariants for the two-bridge knots `C(2n,4)`.

pub mod error;
pub mod geometry;
pub mod invariants;
pub mod knot;
pub mod numeric;
pub mod rm;

pub use error::{Error, Result};
