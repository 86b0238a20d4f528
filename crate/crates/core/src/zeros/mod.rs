//! Zeros and poles through the symmetrization `Phi o F`: contours and
//! winding numbers, root finding, classification into real, isolated and
//! spherical zeros, the counting identities, and the Rouche, Jensen and
//! Hurwitz checks.

mod classify;
mod contour;
mod roots;
mod theorems;

pub use classify::{
    count_in_region, find_all_zeros, find_zeros, sphere_order, weighted_zero_count, CountReport,
    SliceFunction, ZeroKind, ZeroRecord, BOUNDARY_GUARD, STEM_ZERO_TOL,
};
pub use contour::{winding_log_derivative, winding_rational, Contour, SYMMETRY_TOL};
pub use roots::roots_with_multiplicity;
pub use theorems::{
    hurwitz_probe, jensen_check, rouche_same_count, HurwitzReport, JensenReport, RoucheReport,
};
