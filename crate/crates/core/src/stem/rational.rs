use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::ComplexPoly;
use super::polynomial::StemPolynomial;
use crate::error::{Error, Result};
use crate::hypercomplex::{ComplexQuad, Quaternion};

/// Relative size below which a denominator value counts as zero.
const SINGULAR_TOL: f64 = 1e-14;

/// A slice-meromorphic function `num / den` whose denominator has real
/// coefficients. The stem is `N(z) / d(z)` componentwise and on a slice the
/// value is `d(q)^{-1} num(q)`.
///
/// Serialized as `{"num": {"coeffs": ...}, "den": [real, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StemRationalRepr", into = "StemRationalRepr")]
pub struct StemRational {
    num: StemPolynomial,
    den: ComplexPoly,
}

#[derive(Serialize, Deserialize)]
struct StemRationalRepr {
    num: StemPolynomial,
    den: ComplexPoly,
}

impl TryFrom<StemRationalRepr> for StemRational {
    type Error = Error;
    fn try_from(r: StemRationalRepr) -> Result<Self> {
        StemRational::new(r.num, r.den)
    }
}

impl From<StemRational> for StemRationalRepr {
    fn from(r: StemRational) -> Self {
        StemRationalRepr { num: r.num, den: r.den }
    }
}

impl StemRational {
    pub fn new(num: StemPolynomial, den: ComplexPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("denominator is identically zero".into()));
        }
        Ok(StemRational { num, den })
    }

    pub fn from_polynomial(p: StemPolynomial) -> Self {
        StemRational { num: p, den: ComplexPoly::constant(1.0) }
    }

    pub fn num(&self) -> &StemPolynomial {
        &self.num
    }

    pub fn den(&self) -> &ComplexPoly {
        &self.den
    }

    pub fn eval_stem(&self, z: Complex64) -> Result<ComplexQuad> {
        let d = self.den.eval(z);
        if d.norm() <= SINGULAR_TOL * self.den.magnitude_bound(z) {
            return Err(Error::SingularDenominator);
        }
        Ok(self.num.eval_stem(z).scale(d.inv()))
    }

    pub fn eval_slice(&self, q: Quaternion) -> Result<Quaternion> {
        let d = self
            .den
            .coeffs()
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| q * acc + Quaternion::real(c));
        let bound = self.den.magnitude_bound(Complex64::new(q.norm(), 0.0));
        if d.norm() <= SINGULAR_TOL * bound {
            return Err(Error::SingularDenominator);
        }
        let d_inv = d.inv().ok_or(Error::SingularDenominator)?;
        Ok(d_inv * self.num.eval_slice(q))
    }

    /// `Phi o H` as the pair `(Phi o N, d^2)`.
    pub fn symmetrize(&self) -> (ComplexPoly, ComplexPoly) {
        (self.num.symmetrize(), &self.den * &self.den)
    }

    /// `self * other`.
    pub fn star(&self, other: &StemRational) -> StemRational {
        StemRational {
            num: self.num.star_product(&other.num),
            den: &self.den * &other.den,
        }
    }

    /// `self * g` for a polynomial `g`.
    pub fn star_polynomial(&self, g: &StemPolynomial) -> StemRational {
        StemRational { num: self.num.star_product(g), den: self.den.clone() }
    }

    /// `g * self` for a polynomial `g`.
    pub fn left_star_polynomial(&self, g: &StemPolynomial) -> StemRational {
        StemRational { num: g.star_product(&self.num), den: self.den.clone() }
    }
}
