use std::ops::Neg;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Quaternion;
use crate::error::{Error, Result};

/// Inputs farther than this from unit norm are rejected instead of renormalized.
const RENORMALIZE_WINDOW: f64 = 1e-6;

/// An imaginary unit `v = a i + b j + c k` with `a^2 + b^2 + c^2 = 1`, so
/// that `v^2 = -1`. Normalized on construction.
///
/// Serialized as `[a, b, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryUnit {
    a: f64,
    b: f64,
    c: f64,
}

impl ImaginaryUnit {
    pub const I: ImaginaryUnit = ImaginaryUnit { a: 1.0, b: 0.0, c: 0.0 };
    pub const J: ImaginaryUnit = ImaginaryUnit { a: 0.0, b: 1.0, c: 0.0 };
    pub const K: ImaginaryUnit = ImaginaryUnit { a: 0.0, b: 0.0, c: 1.0 };

    /// Accepts vectors within 1e-6 of unit norm (renormalizing them) and
    /// rejects everything else.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let norm = (a * a + b * b + c * c).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > RENORMALIZE_WINDOW {
            return Err(Error::InvalidUnit { norm });
        }
        Ok(ImaginaryUnit { a: a / norm, b: b / norm, c: c / norm })
    }

    /// Direction of an arbitrary nonzero vector.
    pub fn from_direction(a: f64, b: f64, c: f64) -> Result<Self> {
        let norm = (a * a + b * b + c * c).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidUnit { norm });
        }
        Ok(ImaginaryUnit { a: a / norm, b: b / norm, c: c / norm })
    }

    pub fn components(self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn a(self) -> f64 {
        self.a
    }

    pub fn b(self) -> f64 {
        self.b
    }

    pub fn c(self) -> f64 {
        self.c
    }

    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.a, self.b, self.c)
    }

    /// `rho_v(x + iota y) = x + v y`.
    pub fn embed(self, z: Complex64) -> Quaternion {
        Quaternion::new(z.re, self.a * z.im, self.b * z.im, self.c * z.im)
    }

    /// Euclidean distance between the two units as points of R^3.
    pub fn distance(self, other: ImaginaryUnit) -> f64 {
        let d = [self.a - other.a, self.b - other.b, self.c - other.c];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit { a: -self.a, b: -self.b, c: -self.c }
    }
}

impl TryFrom<[f64; 3]> for ImaginaryUnit {
    type Error = Error;
    fn try_from(c: [f64; 3]) -> Result<Self> {
        ImaginaryUnit::new(c[0], c[1], c[2])
    }
}

impl From<ImaginaryUnit> for [f64; 3] {
    fn from(v: ImaginaryUnit) -> Self {
        v.components()
    }
}

impl Quaternion {
    /// Writes `q = x + v y` with `y >= 0`. For real `q` the unit is
    /// arbitrary and `i` is returned.
    pub fn slice_decompose(self) -> (f64, f64, ImaginaryUnit) {
        let y = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        if y == 0.0 {
            (self.w, 0.0, ImaginaryUnit::I)
        } else {
            let v = ImaginaryUnit { a: self.x / y, b: self.y / y, c: self.z / y };
            (self.w, y, v)
        }
    }

    /// Stem-plane representative `x + iota y` (with `y >= 0`).
    pub fn stem_point(self) -> Complex64 {
        let (x, y, _) = self.slice_decompose();
        Complex64::new(x, y)
    }
}
