use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{ComplexPoly, TRIM_TOL};
use super::rational::StemRational;
use crate::error::{Error, Result};
use crate::hypercomplex::{ComplexQuad, Quaternion};

/// A slice-regular polynomial `f(q) = sum_n q^n a_n` with quaternion
/// coefficients on the right. Its stem map is `F = (f_0, f_1, f_2, f_3)`
/// where `f_m` has the `m`-th components of the `a_n` as coefficients.
///
/// Serialized as `{"coeffs": [[w, x, y, z], ...]}`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "StemPolynomialRepr", into = "StemPolynomialRepr")]
pub struct StemPolynomial {
    coeffs: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct StemPolynomialRepr {
    coeffs: Vec<Quaternion>,
}

impl From<StemPolynomialRepr> for StemPolynomial {
    fn from(r: StemPolynomialRepr) -> Self {
        StemPolynomial::new(r.coeffs)
    }
}

impl From<StemPolynomial> for StemPolynomialRepr {
    fn from(p: StemPolynomial) -> Self {
        StemPolynomialRepr { coeffs: p.coeffs }
    }
}

impl StemPolynomial {
    /// Trailing coefficients with norm at most `1e-14 * max |a_n|` are dropped;
    /// an empty list is the zero polynomial.
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
        while let Some(last) = coeffs.last() {
            if last.norm() <= TRIM_TOL * scale || last.norm() == 0.0 {
                coeffs.pop();
            } else {
                break;
            }
        }
        StemPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        StemPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Quaternion) -> Self {
        StemPolynomial::new(vec![c])
    }

    /// `q^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Quaternion::ZERO; n + 1];
        c[n] = Quaternion::ONE;
        StemPolynomial::new(c)
    }

    /// `q - p`.
    pub fn linear(p: Quaternion) -> Self {
        StemPolynomial::new(vec![-p, Quaternion::ONE])
    }

    /// A real-coefficient polynomial viewed as a slice function.
    pub fn from_real(p: &ComplexPoly) -> Self {
        StemPolynomial::new(p.coeffs().iter().map(|&c| Quaternion::real(c)).collect())
    }

    /// Reassembles a stem polynomial from its four component polynomials.
    pub fn from_components(parts: &[ComplexPoly; 4]) -> Self {
        let len = parts.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let get = |m: usize, n: usize| parts[m].coeffs().get(n).copied().unwrap_or(0.0);
        StemPolynomial::new(
            (0..len)
                .map(|n| Quaternion::new(get(0, n), get(1, n), get(2, n), get(3, n)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest coefficient norm.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// The four real-coefficient component polynomials `f_0 .. f_3`.
    pub fn components(&self) -> [ComplexPoly; 4] {
        std::array::from_fn(|m| {
            ComplexPoly::new(self.coeffs.iter().map(|c| c.to_array()[m]).collect())
        })
    }

    /// The stem map `F(z)`.
    pub fn eval_stem(&self, z: Complex64) -> ComplexQuad {
        self.taylor_coefficient(z, 0)
    }

    /// `F^(j)(z) / j!`, the `j`-th Taylor coefficient of the stem at `z`.
    pub fn taylor_coefficient(&self, z: Complex64, j: usize) -> ComplexQuad {
        let mut acc = ComplexQuad::ZERO;
        for (n, c) in self.coeffs.iter().enumerate().skip(j).rev() {
            let weight = binomial(n, j);
            acc = acc.scale(z) + ComplexQuad::from_quaternion(c.scale(weight));
        }
        acc
    }

    /// `sum_n C(n, j) |a_n| |z|^(n-j)`, the size against which the `j`-th
    /// Taylor coefficient is compared when deciding whether it vanishes.
    pub fn taylor_bound(&self, z: Complex64, j: usize) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .enumerate()
            .skip(j)
            .rev()
            .fold(0.0, |acc, (n, c)| acc * r + binomial(n, j) * c.norm())
    }

    /// Direct evaluation `sum q^n a_n` by Horner's rule.
    pub fn eval_slice(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| q * acc + c)
    }

    /// Evaluation through the stem: `rho_v(F(x + iota y))` for `q = x + v y`.
    pub fn eval_slice_via_stem(&self, q: Quaternion) -> Quaternion {
        let (x, y, v) = q.slice_decompose();
        self.eval_stem(Complex64::new(x, y)).rho(v)
    }

    /// The star-product: coefficient convolution `c_n = sum_m a_m b_(n-m)`.
    pub fn star_product(&self, other: &StemPolynomial) -> StemPolynomial {
        if self.is_zero() || other.is_zero() {
            return StemPolynomial::zero();
        }
        let mut out = vec![Quaternion::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (m, a) in self.coeffs.iter().enumerate() {
            for (k, b) in other.coeffs.iter().enumerate() {
                out[m + k] += *a * *b;
            }
        }
        StemPolynomial::new(out)
    }

    /// The symmetrization `Phi o F = f_0^2 + f_1^2 + f_2^2 + f_3^2`.
    pub fn symmetrize(&self) -> ComplexPoly {
        self.components()
            .iter()
            .fold(ComplexPoly::zero(), |acc, f| &acc + &(f * f))
    }

    /// Coefficientwise quaternionic conjugation; its stem is `F^c`.
    pub fn star_conjugate(&self) -> StemPolynomial {
        StemPolynomial::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// `f^{-*} = f^c / (Phi o F)`.
    pub fn star_inverse(&self) -> Result<StemRational> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        StemRational::new(self.star_conjugate(), self.symmetrize())
    }

    pub fn add(&self, other: &StemPolynomial) -> StemPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &StemPolynomial, i: usize| p.coeffs.get(i).copied().unwrap_or_default();
        StemPolynomial::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn scale(&self, s: f64) -> StemPolynomial {
        StemPolynomial::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn components(p: &StemPolynomial) -> [ComplexPoly; 4] {
    p.components()
}

pub fn eval_stem(p: &StemPolynomial, z: Complex64) -> ComplexQuad {
    p.eval_stem(z)
}

pub fn eval_slice(p: &StemPolynomial, q: Quaternion) -> Quaternion {
    p.eval_slice(q)
}

pub fn star_product(p: &StemPolynomial, r: &StemPolynomial) -> StemPolynomial {
    p.star_product(r)
}

pub fn symmetrize(p: &StemPolynomial) -> ComplexPoly {
    p.symmetrize()
}

pub fn star_inverse(p: &StemPolynomial) -> Result<StemRational> {
    p.star_inverse()
}
