use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the library. Every operation is pure, so an error always
/// describes a property of the inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not an imaginary unit: |v| = {norm}")]
    InvalidUnit { norm: f64 },

    #[error("point is not on the zero variety (residual {residual:e})")]
    NotOnVariety { residual: f64 },

    #[error("degenerate variety point: the imaginary part vanishes")]
    DegenerateZero,

    #[error("the zero polynomial has no star-inverse")]
    ZeroPolynomial,

    #[error("polynomial of degree 0 has no roots")]
    ConstantPolynomial,

    #[error("zero or pole on (or too close to) the contour near {0}")]
    RootOnContour(Complex64),

    #[error("quadrature did not converge with {0} nodes")]
    NonConvergence(usize),

    #[error("contour is not symmetric about the real axis")]
    AsymmetricContour,

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("kernel is singular: q lies on the sphere of s")]
    SingularKernel,

    #[error("point lies outside the integration domain")]
    OutsideDomain,

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("symmetrization vanishes at the origin")]
    UndefinedAtOrigin,

    #[error("denominator is singular at the evaluation point")]
    SingularDenominator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidUnit { .. } => "invalid_unit",
            Error::NotOnVariety { .. } => "not_on_variety",
            Error::DegenerateZero => "degenerate_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::ConstantPolynomial => "constant_polynomial",
            Error::RootOnContour(_) => "root_on_contour",
            Error::NonConvergence(_) => "non_convergence",
            Error::AsymmetricContour => "asymmetric_contour",
            Error::InvalidContour(_) => "invalid_contour",
            Error::SingularKernel => "singular_kernel",
            Error::OutsideDomain => "outside_domain",
            Error::DependentVectors => "dependent_vectors",
            Error::UndefinedAtOrigin => "undefined_at_origin",
            Error::SingularDenominator => "singular_denominator",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }

    /// True for errors caused by malformed input rather than by a violated
    /// mathematical precondition.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidUnit { .. } | Error::InvalidContour(_) | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
