//! Stem representations of slice-regular polynomials and slice-meromorphic
//! quotients: evaluation on both sides (`f` on H and `F` on C), the
//! star-algebra, symmetrization and inverses.

mod poly;
mod polynomial;
mod rational;

pub use poly::{derivative, ComplexPoly};
pub use polynomial::{
    components, eval_slice, eval_stem, star_inverse, star_product, symmetrize, StemPolynomial,
};
pub use rational::StemRational;
