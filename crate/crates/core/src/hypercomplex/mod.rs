//! Quaternions, imaginary units and the complexified algebra `C^4 = H (x) C`
//! carrying the star-product, the realization maps `rho_v` and the quadratic
//! form `Phi` whose zero set is the variety `Z`.

mod quad;
mod quaternion;
mod unit;

pub use quad::{
    in_variety, phi, rho, star, star_conjugate, unit_from_zero, unit_from_zero_tol, ComplexQuad,
    DEFAULT_VARIETY_TOL,
};
pub use quaternion::{quat_mul, Quaternion};
pub use unit::ImaginaryUnit;
