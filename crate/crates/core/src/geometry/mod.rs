//! Root solving for `P_2n(x, e^{i alpha/2})`, continuation of the geometric
//! component in the cone angle and the transition angle `alpha_0`.

pub mod alpha0;
pub mod branch;
pub mod cone;
pub mod record;
pub mod roots;

pub use alpha0::{alpha0_floor, find_alpha0, Alpha0};
pub use branch::{continue_branch, BranchSample, GeometricBranch, Regime};
pub use cone::{ConeGeometry, PathSamples, Side};
pub use record::Alpha0Record;
pub use roots::{anchor_roots, roots_at};
