//! The Clifford algebra on three generators `e0, e1, e2` with `e_i^2 = -1`,
//! its complexification `C^8`, the quadratic form `Phi_8`, and winding-number
//! bounds for zeros of slice polynomials with Clifford coefficients.
//!
//! Components are stored in the order
//! `1, e0, e1, e2, e0e1, e0e2, e1e2, e0e1e2`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercomplex::Quaternion;
use crate::stem::{ComplexPoly, StemPolynomial};
use crate::zeros::{winding_log_derivative, Contour};

/// Generator bitmask of each basis slot.
const MASKS: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

const fn slot_of(mask: u8) -> usize {
    match mask {
        0b000 => 0,
        0b001 => 1,
        0b010 => 2,
        0b100 => 3,
        0b011 => 4,
        0b101 => 5,
        0b110 => 6,
        _ => 7,
    }
}

/// Sign of the product of two basis blades, counting transpositions needed
/// to sort the generators and one factor of `-1` per repeated generator.
const fn blade_sign(a: u8, b: u8) -> f64 {
    let mut swaps = 0u32;
    let mut bits = b;
    while bits != 0 {
        let low = bits & bits.wrapping_neg();
        swaps += (a & !(low | (low - 1))).count_ones();
        bits &= bits - 1;
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

const fn product_table() -> [[(usize, f64); 8]; 8] {
    let mut table = [[(0usize, 0.0f64); 8]; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            table[i][j] = (slot_of(MASKS[i] ^ MASKS[j]), blade_sign(MASKS[i], MASKS[j]));
            j += 1;
        }
        i += 1;
    }
    table
}

static TABLE: [[(usize, f64); 8]; 8] = product_table();

/// An element of the real Clifford algebra on three anti-Euclidean generators.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clifford3(pub [f64; 8]);

impl Clifford3 {
    pub const ZERO: Clifford3 = Clifford3([0.0; 8]);
    pub const ONE: Clifford3 = Clifford3::basis(0);
    pub const E0: Clifford3 = Clifford3::basis(1);
    pub const E1: Clifford3 = Clifford3::basis(2);
    pub const E2: Clifford3 = Clifford3::basis(3);

    pub const fn basis(slot: usize) -> Clifford3 {
        let mut c = [0.0; 8];
        c[slot] = 1.0;
        Clifford3(c)
    }

    pub fn scalar(s: f64) -> Clifford3 {
        let mut c = [0.0; 8];
        c[0] = s;
        Clifford3(c)
    }

    /// `i -> e0`, `j -> e1`, `k -> e0 e1`.
    pub fn from_quaternion(q: Quaternion) -> Clifford3 {
        Clifford3([q.w, q.x, q.y, 0.0, q.z, 0.0, 0.0, 0.0])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Clifford3 {
        Clifford3(self.0.map(|c| c * s))
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, n: u32) -> Clifford3 {
        (0..n).fold(Clifford3::ONE, |acc, _| acc * *self)
    }
}

/// The algebra product.
pub fn cl3_mul(a: &Clifford3, b: &Clifford3) -> Clifford3 {
    let mut out = [0.0; 8];
    for (i, &x) in a.0.iter().enumerate().filter(|(_, x)| **x != 0.0) {
        for (j, &y) in b.0.iter().enumerate() {
            let (k, s) = TABLE[i][j];
            out[k] += s * x * y;
        }
    }
    Clifford3(out)
}

impl Mul for Clifford3 {
    type Output = Clifford3;
    fn mul(self, rhs: Clifford3) -> Clifford3 {
        cl3_mul(&self, &rhs)
    }
}

impl Add for Clifford3 {
    type Output = Clifford3;
    fn add(self, rhs: Clifford3) -> Clifford3 {
        Clifford3(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for Clifford3 {
    type Output = Clifford3;
    fn sub(self, rhs: Clifford3) -> Clifford3 {
        Clifford3(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for Clifford3 {
    type Output = Clifford3;
    fn neg(self) -> Clifford3 {
        Clifford3(self.0.map(|c| -c))
    }
}

impl Index<usize> for Clifford3 {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

/// Membership in the set of imaginary units: no scalar or pseudoscalar part,
/// unit norm, and `u1 u6 - u2 u5 + u3 u4 = 0`.
pub fn in_s3(u: &Clifford3, tol: f64) -> bool {
    let c = &u.0;
    c[0].abs() <= tol
        && c[7].abs() <= tol
        && (u.norm_sqr() - 1.0).abs() <= tol
        && (c[1] * c[6] - c[2] * c[5] + c[3] * c[4]).abs() <= tol
}

/// A random imaginary unit. The vector part `(u1, u2, u3)` and the dual of
/// the bivector part `(u6, -u5, u4)` are drawn as Gaussian-like vectors,
/// made orthogonal, then normalized jointly.
pub fn random_s3_unit<R: Rng + ?Sized>(rng: &mut R) -> Clifford3 {
    loop {
        let a: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let mut d: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let aa: f64 = a.iter().map(|x| x * x).sum();
        if aa < 1e-6 {
            continue;
        }
        let t = a.iter().zip(&d).map(|(x, y)| x * y).sum::<f64>() / aa;
        for (di, ai) in d.iter_mut().zip(&a) {
            *di -= t * ai;
        }
        // Occasionally collapse to a pure vector or pure bivector unit.
        match rng.random_range(0..8) {
            0 => d = [0.0; 3],
            1 => {
                let dd: f64 = d.iter().map(|x| x * x).sum();
                if dd < 1e-6 {
                    continue;
                }
                let u = Clifford3([0.0, 0.0, 0.0, 0.0, d[2], -d[1], d[0], 0.0]);
                return u.scale(dd.sqrt().recip());
            }
            _ => {}
        }
        let u = Clifford3([0.0, a[0], a[1], a[2], d[2], -d[1], d[0], 0.0]);
        return u.scale(u.norm().recip());
    }
}

/// An element of `C (x) R_3 = C^8`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexOct(pub [Complex64; 8]);

impl ComplexOct {
    pub const ONE: ComplexOct = ComplexOct([
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]);

    /// `re + iota * im`.
    pub fn from_parts(re: &Clifford3, im: &Clifford3) -> ComplexOct {
        ComplexOct(std::array::from_fn(|k| Complex64::new(re.0[k], im.0[k])))
    }

    pub fn from_real(a: &Clifford3) -> ComplexOct {
        ComplexOct::from_parts(a, &Clifford3::ZERO)
    }

    pub fn re(&self) -> Clifford3 {
        Clifford3(self.0.map(|c| c.re))
    }

    pub fn im(&self) -> Clifford3 {
        Clifford3(self.0.map(|c| c.im))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> ComplexOct {
        ComplexOct(self.0.map(|c| c * s))
    }

    /// The second defining form of the variety,
    /// `z0 z7 - z1 z6 + z2 z5 - z3 z4`.
    pub fn twist(&self) -> Complex64 {
        let z = &self.0;
        z[0] * z[7] - z[1] * z[6] + z[2] * z[5] - z[3] * z[4]
    }
}

impl Index<usize> for ComplexOct {
    type Output = Complex64;
    fn index(&self, k: usize) -> &Complex64 {
        &self.0[k]
    }
}

/// `z0^2 + ... + z7^2`.
pub fn phi8(z: &ComplexOct) -> Complex64 {
    z.0.iter().map(|c| c * c).sum()
}

/// Both defining equations hold within `tol * |z|^2`.
pub fn in_z8(z: &ComplexOct, tol: f64) -> bool {
    let scale = tol * z.norm_sqr().max(f64::MIN_POSITIVE);
    phi8(z).norm() <= scale && z.twist().norm() <= scale
}

/// The complex-bilinear extension of the algebra product.
pub fn star8(z: &ComplexOct, w: &ComplexOct) -> ComplexOct {
    let mut out = [Complex64::new(0.0, 0.0); 8];
    for i in 0..8 {
        for j in 0..8 {
            let (k, s) = TABLE[i][j];
            out[k] += z.0[i] * w.0[j] * s;
        }
    }
    ComplexOct(out)
}

/// `f(q) = sum_n q^n a_n` with coefficients in the Clifford algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cl3Polynomial {
    coeffs: Vec<Clifford3>,
}

impl Cl3Polynomial {
    pub fn new(mut coeffs: Vec<Clifford3>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        Cl3Polynomial { coeffs }
    }

    pub fn constant(a: Clifford3) -> Self {
        Cl3Polynomial::new(vec![a])
    }

    /// `q - p`.
    pub fn linear(p: Clifford3) -> Self {
        Cl3Polynomial::new(vec![-p, Clifford3::ONE])
    }

    pub fn from_quaternion(f: &StemPolynomial) -> Self {
        Cl3Polynomial::new(f.coeffs().iter().map(|q| Clifford3::from_quaternion(*q)).collect())
    }

    pub fn coeffs(&self) -> &[Clifford3] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at a point of the algebra, `sum q^n a_n`.
    pub fn eval(&self, q: &Clifford3) -> Clifford3 {
        let mut power = Clifford3::ONE;
        let mut acc = Clifford3::ZERO;
        for a in &self.coeffs {
            acc = acc + power * *a;
            power = power * *q;
        }
        acc
    }

    /// The eight real polynomials `F_l(z) = sum_n z^n a_{n,l}`.
    pub fn components(&self) -> [ComplexPoly; 8] {
        std::array::from_fn(|l| ComplexPoly::new(self.coeffs.iter().map(|a| a.0[l]).collect()))
    }

    pub fn eval_stem(&self, z: Complex64) -> ComplexOct {
        let mut acc = [Complex64::new(0.0, 0.0); 8];
        for a in self.coeffs.iter().rev() {
            for (c, x) in acc.iter_mut().zip(a.0) {
                *c = *c * z + x;
            }
        }
        ComplexOct(acc)
    }

    /// `Phi_8 o F` as a polynomial with real coefficients.
    pub fn phi8_poly(&self) -> ComplexPoly {
        self.components()
            .iter()
            .fold(ComplexPoly::zero(), |acc, c| &acc + &(c * c))
    }

    /// `(sum q^n a_n) * (sum q^m b_m) = sum q^(n+m) a_n b_m`.
    pub fn star(&self, other: &Cl3Polynomial) -> Cl3Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Cl3Polynomial::new(Vec::new());
        }
        let mut out = vec![Clifford3::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            for (m, b) in other.coeffs.iter().enumerate() {
                out[n + m] = out[n + m] + *a * *b;
            }
        }
        Cl3Polynomial::new(out)
    }
}

/// Winding number of `Phi_8 o F` along `c`. Without multiplicativity of
/// `Phi_8` this bounds the zero content from above but is not a count.
pub fn count_upper_bound(f: &Cl3Polynomial, c: &Contour) -> Result<i64> {
    let phi = f.phi8_poly();
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    winding_log_derivative(&phi, c)
}
