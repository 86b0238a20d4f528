//! Slice-regular functions of a quaternionic variable, studied through their
//! holomorphic stem maps `F: C -> C^4`.
//!
//! The crate covers the algebra of `H` and `C^4` ([`hypercomplex`]), stem
//! polynomials and rational functions ([`stem`]), zero and pole counting by
//! the argument principle applied to `Phi o F` ([`zeros`]), the linear
//! geometry of the zero variety ([`variety`]), Cauchy and Bergman kernels
//! ([`kernels`]), norm identities ([`norms`]) and the Clifford algebra `R_3`
//! analogue ([`clifford`]).

pub mod clifford;
mod error;
pub mod hypercomplex;
pub mod kernels;
pub mod norms;
pub(crate) mod quadrature;
pub mod stem;
pub mod variety;
pub mod zeros;

pub use error::{Error, Result};
pub use hypercomplex::{ComplexQuad, ImaginaryUnit, Quaternion};
pub use num_complex::Complex64;
pub use stem::{ComplexPoly, StemPolynomial, StemRational};
