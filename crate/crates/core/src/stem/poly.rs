use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative threshold below which leading coefficients are dropped.
pub(crate) const TRIM_TOL: f64 = 1e-14;

/// A polynomial with real coefficients, evaluated at complex arguments.
/// Coefficients are stored lowest degree first.
///
/// Serialized as a plain array of reals.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct ComplexPoly {
    coeffs: Vec<f64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        while let Some(&last) = coeffs.last() {
            if last.abs() <= TRIM_TOL * scale || last == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        ComplexPoly { coeffs }
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        ComplexPoly::new(vec![c])
    }

    /// `prod (z - r)` over the given real roots and conjugate pairs
    /// `(z - w)(z - conj w)` for each non-real `w`.
    pub fn from_symmetric_roots(real: &[f64], pairs: &[Complex64]) -> Self {
        let mut p = ComplexPoly::constant(1.0);
        for &r in real {
            p = &p * &ComplexPoly::new(vec![-r, 1.0]);
        }
        for w in pairs {
            p = &p * &ComplexPoly::new(vec![w.norm_sqr(), -2.0 * w.re, 1.0]);
        }
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum |a_n| |z|^n`, the natural size of rounding errors in `eval(z)`.
    pub fn magnitude_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
    }

    pub fn derivative(&self) -> ComplexPoly {
        ComplexPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| n as f64 * c)
                .collect(),
        )
    }

    /// `k`-th derivative.
    pub fn nth_derivative(&self, k: usize) -> ComplexPoly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: f64) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Largest absolute coefficient.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Coefficientwise comparison relative to the larger of the two.
    pub fn relative_distance(&self, other: &ComplexPoly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &ComplexPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(0.0);
        let diff = (0..n).fold(0.0f64, |m, i| m.max((get(self, i) - get(other, i)).abs()));
        let scale = self.max_coeff().max(other.max_coeff());
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

impl From<Vec<f64>> for ComplexPoly {
    fn from(c: Vec<f64>) -> Self {
        ComplexPoly::new(c)
    }
}

impl From<ComplexPoly> for Vec<f64> {
    fn from(p: ComplexPoly) -> Self {
        p.coeffs
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, o: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ComplexPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(0.0) + o.coeffs.get(i).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, o: &ComplexPoly) -> ComplexPoly {
        self + &(-o)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        ComplexPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, o: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || o.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

/// Formal derivative.
pub fn derivative(p: &ComplexPoly) -> ComplexPoly {
    p.derivative()
}
