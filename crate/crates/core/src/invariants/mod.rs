//! Longitude holonomy, volume and Chern-Simons invariants along the
//! geometric branch.

pub mod integrals;
pub mod longitude;
pub mod profile;
pub mod quadrature;
pub mod result;

pub use integrals::{
    chern_simons, chern_simons_complete, cs_modulus, cyclic_cover, lens_cs, log_abs_l, reduce, unwrapped_arg_l, volume,
    InvariantResult, Invariants, SNAP,
};
pub use longitude::{complex_length, longitude_l, longitude_l_from_lemma, meridian_images, ComplexLength, LongitudeHolonomy};
pub use quadrature::{cumulative_path_integral, path_integral, simpson};
pub use profile::{profile_csv, profile_csv_for_bits, ProfileRow, PROFILE_HEADER};
pub use result::ResultJson;
