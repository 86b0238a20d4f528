use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ImaginaryUnit, Quaternion};
use crate::error::{Error, Result};

/// Default relative tolerance of the variety membership predicates.
pub const DEFAULT_VARIETY_TOL: f64 = 1e-9;

/// Below this ratio `|Im A| / |A|` a variety point is treated as real.
const DEGENERATE_RATIO: f64 = 1e-12;

/// An element of `H (x) C = C^4`, written in the complex basis `{1, i, j, k}`.
/// The complex unit `iota` commutes with everything.
///
/// Serialized as `[[re, im], [re, im], [re, im], [re, im]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[Complex64; 4]", into = "[Complex64; 4]")]
pub struct ComplexQuad(pub [Complex64; 4]);

impl ComplexQuad {
    pub const ZERO: ComplexQuad = ComplexQuad([Complex64::new(0.0, 0.0); 4]);
    pub const ONE: ComplexQuad = ComplexQuad([
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]);

    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        ComplexQuad([c0, c1, c2, c3])
    }

    /// Builds `re + iota im` from two quaternions.
    pub fn from_parts(re: Quaternion, im: Quaternion) -> Self {
        let (r, i) = (re.to_array(), im.to_array());
        ComplexQuad(std::array::from_fn(|m| Complex64::new(r[m], i[m])))
    }

    /// The real point `q` of `C^4`.
    pub fn from_quaternion(q: Quaternion) -> Self {
        ComplexQuad::from_parts(q, Quaternion::ZERO)
    }

    /// `z * 1` for a complex scalar `z`.
    pub fn scalar(z: Complex64) -> Self {
        let mut c = ComplexQuad::ZERO;
        c.0[0] = z;
        c
    }

    /// Real part, read as a quaternion.
    pub fn re(&self) -> Quaternion {
        Quaternion::from_array(self.0.map(|c| c.re))
    }

    /// Imaginary part, read as a quaternion.
    pub fn im(&self) -> Quaternion {
        Quaternion::from_array(self.0.map(|c| c.im))
    }

    /// Componentwise complex conjugation.
    pub fn conj(&self) -> Self {
        ComplexQuad(self.0.map(|c| c.conj()))
    }

    /// Hermitian squared norm `sum |c_m|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexQuad(self.0.map(|c| c * s))
    }

    /// The C-bilinear extension of the quaternion product.
    pub fn star(&self, other: &ComplexQuad) -> ComplexQuad {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = other.0;
        ComplexQuad([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }

    /// The complex quadratic form `c0^2 + c1^2 + c2^2 + c3^2` (no conjugation).
    pub fn phi(&self) -> Complex64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// Quaternionic conjugation lifted to `C^4`: `(c0, -c1, -c2, -c3)`.
    pub fn star_conjugate(&self) -> ComplexQuad {
        let [c0, c1, c2, c3] = self.0;
        ComplexQuad([c0, -c1, -c2, -c3])
    }

    /// `rho_v(A) = sum_m rho_v(c_m) e_m`.
    pub fn rho(&self, v: ImaginaryUnit) -> Quaternion {
        // rho_v(A) = Re A + v Im A
        self.re() + v.as_quaternion() * self.im()
    }
}

impl From<[Complex64; 4]> for ComplexQuad {
    fn from(c: [Complex64; 4]) -> Self {
        ComplexQuad(c)
    }
}

impl From<ComplexQuad> for [Complex64; 4] {
    fn from(c: ComplexQuad) -> Self {
        c.0
    }
}

impl Index<usize> for ComplexQuad {
    type Output = Complex64;
    fn index(&self, m: usize) -> &Complex64 {
        &self.0[m]
    }
}

impl Add for ComplexQuad {
    type Output = ComplexQuad;
    fn add(self, o: ComplexQuad) -> ComplexQuad {
        ComplexQuad(std::array::from_fn(|m| self.0[m] + o.0[m]))
    }
}

impl Sub for ComplexQuad {
    type Output = ComplexQuad;
    fn sub(self, o: ComplexQuad) -> ComplexQuad {
        ComplexQuad(std::array::from_fn(|m| self.0[m] - o.0[m]))
    }
}

impl Neg for ComplexQuad {
    type Output = ComplexQuad;
    fn neg(self) -> ComplexQuad {
        ComplexQuad(self.0.map(|c| -c))
    }
}

impl Mul<Complex64> for ComplexQuad {
    type Output = ComplexQuad;
    fn mul(self, s: Complex64) -> ComplexQuad {
        self.scale(s)
    }
}

pub fn rho(v: ImaginaryUnit, a: &ComplexQuad) -> Quaternion {
    a.rho(v)
}

pub fn star(a: &ComplexQuad, b: &ComplexQuad) -> ComplexQuad {
    a.star(b)
}

pub fn phi(a: &ComplexQuad) -> Complex64 {
    a.phi()
}

pub fn star_conjugate(a: &ComplexQuad) -> ComplexQuad {
    a.star_conjugate()
}

/// Membership in `Z(q)`: `|Phi(A - q)| <= tol * max(1, |A|^2)`.
pub fn in_variety(a: &ComplexQuad, q: Quaternion, tol: f64) -> bool {
    let shifted = *a - ComplexQuad::from_quaternion(q);
    shifted.phi().norm() <= tol * a.norm_sqr().max(1.0)
}

/// The unique `v` with `rho_v(A) = 0`, for `A` on the variety with nonzero
/// imaginary part. Uses `v = -alpha beta^{-1}` where `A = alpha + iota beta`.
pub fn unit_from_zero(a: &ComplexQuad) -> Result<ImaginaryUnit> {
    unit_from_zero_tol(a, DEFAULT_VARIETY_TOL)
}

/// [`unit_from_zero`] with an explicit relative membership tolerance. The
/// recovered unit is invariant under complex rescaling of `A`, so membership
/// is measured against `|A|^2` alone.
pub fn unit_from_zero_tol(a: &ComplexQuad, tol: f64) -> Result<ImaginaryUnit> {
    let size = a.norm();
    if size == 0.0 {
        return Err(Error::DegenerateZero);
    }
    let residual = a.phi().norm() / (size * size);
    if residual > tol {
        return Err(Error::NotOnVariety { residual });
    }
    let alpha = a.re();
    let beta = a.im();
    if beta.norm() < DEGENERATE_RATIO * size {
        return Err(Error::DegenerateZero);
    }
    let beta_inv = beta.inv().ok_or(Error::DegenerateZero)?;
    let v = -(alpha * beta_inv);
    let [x, y, z] = v.vector();
    ImaginaryUnit::from_direction(x, y, z)
}
