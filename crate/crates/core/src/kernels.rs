//! Integral kernels on slices: the slice Cauchy kernel, boundary quadrature
//! on a circle in one slice `C_v`, the two extensions of a real-coefficient
//! kernel series to slice-regular functions, and the Bergman kernel of the
//! unit ball.
//!
//! Boundary integrals use the parametrization `s = c + R e^{v theta}`, for
//! which `ds / v = (s - c) d theta`; with the trapezoid rule on `N` nodes
//! the factor `1 / 2 pi` becomes `1 / N`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercomplex::{ComplexQuad, ImaginaryUnit, Quaternion};
use crate::quadrature::{gauss_legendre, trapezoid_angles};
use crate::stem::{ComplexPoly, StemPolynomial};

/// Relative size below which a quaternionic denominator is singular.
const SINGULAR_TOL: f64 = 1e-14;
/// Tail bound for the truncated Bergman series.
const BERGMAN_TAIL: f64 = 1e-12;

/// A circle `c + R e^{v theta}` in the slice `C_v` with `c` real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceCircle {
    pub unit: ImaginaryUnit,
    pub center: f64,
    pub radius: f64,
    pub nodes: usize,
}

impl SliceCircle {
    pub fn new(unit: ImaginaryUnit, center: f64, radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::InvalidContour(format!("radius must be positive, got {radius}")));
        }
        if nodes < 8 || nodes % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "node count must be even and at least 8, got {nodes}"
            )));
        }
        Ok(SliceCircle { unit, center, radius, nodes })
    }

    /// Quadrature nodes `s_k` with their weights `(s_k - c) / N`.
    fn nodes(&self) -> impl Iterator<Item = (Quaternion, Quaternion)> + '_ {
        let n = self.nodes as f64;
        trapezoid_angles(self.nodes).map(move |t| {
            let d = self.unit.embed(Complex64::from_polar(self.radius, t));
            (Quaternion::real(self.center) + d, d / n)
        })
    }

    /// Same nodes in the complex plane: `(w_k, (w_k - c) / N)`.
    fn complex_nodes(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.nodes as f64;
        trapezoid_angles(self.nodes).map(move |t| {
            let d = Complex64::from_polar(self.radius, t);
            (self.center + d, d / n)
        })
    }

    /// True when the sphere through `q` meets the open disc bounded by the
    /// circle, i.e. `q` lies in the axially symmetric domain.
    pub fn encloses(&self, q: Quaternion) -> bool {
        (q.stem_point() - self.center).norm() < self.radius
    }
}

/// `q^2 - 2 Re(s) q + |s|^2`, the real-quadratic polynomial of the sphere
/// `[s]` evaluated at `q`.
fn sphere_polynomial(q: Quaternion, s: Quaternion) -> Quaternion {
    q * q - q * (2.0 * s.re()) + Quaternion::real(s.norm_sqr())
}

/// `S^{-1}_L(q, s) = -(q^2 - 2 Re(s) q + |s|^2)^{-1} (q - conj s)`.
pub fn cauchy_kernel(q: Quaternion, s: Quaternion) -> Result<Quaternion> {
    let d = sphere_polynomial(q, s);
    let size = q.norm_sqr() + 2.0 * s.re().abs() * q.norm() + s.norm_sqr();
    if d.norm() <= SINGULAR_TOL * size.max(1.0) {
        return Err(Error::SingularKernel);
    }
    let d_inv = d.inv().ok_or(Error::SingularKernel)?;
    Ok(-(d_inv * (q - s.conj())))
}

/// `f(q)` reproduced from the values of `f` on one slice circle by the
/// trapezoid rule applied to `(1/2 pi) \oint S^{-1}_L(q, s) (ds / v) f(s)`.
pub fn cauchy_eval(f: &StemPolynomial, circle: &SliceCircle, q: Quaternion) -> Result<Quaternion> {
    if !circle.encloses(q) {
        return Err(Error::OutsideDomain);
    }
    let mut acc = Quaternion::ZERO;
    for (s, w) in circle.nodes() {
        acc += cauchy_kernel(q, s)? * w * f.eval_slice(s);
    }
    Ok(acc)
}

/// A finite kernel `K(z, w) = sum a_nm z^n w^m` with real coefficients,
/// `n >= 0` and `m` of either sign.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct KernelSeries {
    terms: Vec<(u32, i32, f64)>,
}

impl KernelSeries {
    pub fn new(terms: Vec<(u32, i32, f64)>) -> Self {
        KernelSeries { terms: terms.into_iter().filter(|t| t.2 != 0.0).collect() }
    }

    /// `sum_{n <= order} z^n w^{-n-1}`, the truncated Cauchy kernel
    /// `1 / (w - z)` about the origin.
    pub fn cauchy_truncation(order: u32) -> Self {
        KernelSeries::new((0..=order).map(|n| (n, -(n as i32) - 1, 1.0)).collect())
    }

    pub fn terms(&self) -> &[(u32, i32, f64)] {
        &self.terms
    }

    pub fn eval_complex(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(n, m, a)| z.powu(n) * w.powi(m) * a)
            .sum()
    }

    /// `K(q, s) = sum a_nm q^n s^m`, powers of `q` on the left.
    pub fn eval_quaternion(&self, q: Quaternion, s: Quaternion) -> Result<Quaternion> {
        let s_inv = s.inv();
        let mut acc = Quaternion::ZERO;
        for &(n, m, a) in &self.terms {
            let sm = if m >= 0 {
                s.powi(m as u32)
            } else {
                s_inv.ok_or(Error::SingularKernel)?.powi((-m) as u32)
            };
            acc += q.powi(n) * sm * a;
        }
        Ok(acc)
    }
}

fn check_origin_off_circle(circle: &SliceCircle, k: &KernelSeries) -> Result<()> {
    let needs_inverse = k.terms.iter().any(|t| t.1 < 0);
    if needs_inverse && (circle.center.abs() - circle.radius).abs() <= 1e-12 * circle.radius {
        return Err(Error::SingularKernel);
    }
    Ok(())
}

/// First extension: `K_H f(q) = (1/2 pi) \oint K(q, s) (ds / v) f(s)` with
/// quaternionic variables substituted into the series.
pub fn kernel_extend_eval(
    k: &KernelSeries,
    f: &StemPolynomial,
    circle: &SliceCircle,
    q: Quaternion,
) -> Result<Quaternion> {
    check_origin_off_circle(circle, k)?;
    let mut acc = Quaternion::ZERO;
    for (s, w) in circle.nodes() {
        acc += k.eval_quaternion(q, s)? * w * f.eval_slice(s);
    }
    Ok(acc)
}

/// Second extension: the complex operator applied to each component `f_m`
/// at the stem point of `q`, reassembled as `sum rho_v(K f_m) e_m`.
pub fn kernel_extend_componentwise(
    k: &KernelSeries,
    f: &StemPolynomial,
    circle: &SliceCircle,
    q: Quaternion,
) -> Result<Quaternion> {
    check_origin_off_circle(circle, k)?;
    let (x, y, v) = q.slice_decompose();
    let z = Complex64::new(x, y);
    let parts = f.components();
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (w, weight) in circle.complex_nodes() {
        let kw = k.eval_complex(z, w) * weight;
        for (o, p) in out.iter_mut().zip(&parts) {
            *o += kw * p.eval(w);
        }
    }
    Ok(ComplexQuad(out).rho(v))
}

/// Smallest `N` with `(N + 2) r^(N + 1) / (1 - r)^2` below the tail bound.
fn bergman_terms(r: f64) -> usize {
    let mut n = 0usize;
    let denom = (1.0 - r).powi(2);
    let mut rp = r;
    while (n as f64 + 2.0) * rp / denom >= BERGMAN_TAIL {
        n += 1;
        rp *= r;
    }
    n
}

fn check_ball(q: Quaternion) -> Result<()> {
    if q.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDomain)
    }
}

/// The two complex series `A(z), B(z)` with `K(q, s) = rho_{v_q}(A) +
/// rho_{v_q}(B) v_s`, where `z` and `w` are the stem points of `q` and `s`.
fn bergman_split_series(z: Complex64, w: Complex64, terms: usize) -> (Complex64, Complex64) {
    let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut zn = Complex64::new(1.0, 0.0);
    let mut wn = Complex64::new(1.0, 0.0);
    let wbar = w.conj();
    for n in 0..=terms {
        let weight = (n + 1) as f64;
        a += zn * (weight * wn.re);
        b += zn * (weight * wn.im);
        zn *= z;
        wn *= wbar;
    }
    (a / PI, b / PI)
}

fn bergman_split_closed(z: Complex64, w: Complex64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let g = |u: Complex64| (one - u).powi(-2);
    let (p, m) = (g(z * w.conj()), g(z * w));
    ((p + m) / (2.0 * PI), (p - m) / (Complex64::new(0.0, 2.0 * PI)))
}

fn assemble(a: Complex64, b: Complex64, vq: ImaginaryUnit, vs: ImaginaryUnit) -> Quaternion {
    vq.embed(a) + vq.embed(b) * vs.as_quaternion()
}

/// Bergman kernel of the unit ball, `(1/pi) sum (n + 1) q^n conj(s)^n`,
/// truncated once the tail is below `1e-12`.
pub fn bergman_kernel(q: Quaternion, s: Quaternion) -> Result<Quaternion> {
    check_ball(q)?;
    check_ball(s)?;
    let (xq, yq, vq) = q.slice_decompose();
    let (xs, ys, vs) = s.slice_decompose();
    let terms = bergman_terms(q.norm() * s.norm());
    let (a, b) = bergman_split_series(Complex64::new(xq, yq), Complex64::new(xs, ys), terms);
    Ok(assemble(a, b, vq, vs))
}

/// `f(q)` reproduced as `int K(q, s) f(s) d mu(s)` over the unit disc of the
/// slice `C_v`, by Gauss-Legendre in the radius times the trapezoid rule in
/// the angle.
pub fn bergman_reproduce(
    f: &StemPolynomial,
    v: ImaginaryUnit,
    q: Quaternion,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<Quaternion> {
    check_ball(q)?;
    if radial_nodes == 0 || angular_nodes == 0 {
        return Err(Error::InvalidArgument("node counts must be positive".into()));
    }
    let (xq, yq, vq) = q.slice_decompose();
    let z = Complex64::new(xq, yq);
    let angles: Vec<Complex64> = trapezoid_angles(angular_nodes).map(|t| Complex64::from_polar(1.0, t)).collect();
    let dtheta = std::f64::consts::TAU / angular_nodes as f64;
    let mut acc = Quaternion::ZERO;
    for (r, wr) in gauss_legendre(radial_nodes, 0.0, 1.0) {
        let weight = wr * r * dtheta;
        for e in &angles {
            let w = e * r;
            let s = v.embed(w);
            let (a, b) = bergman_split_closed(z, w);
            acc += assemble(a, b, vq, v) * f.eval_slice(s) * weight;
        }
    }
    Ok(acc)
}

/// Both sides of `rho_v(p(z) d(z)^{-1}) = d(rho_v z)^{-1} p(rho_v z)` for a
/// quaternion-coefficient numerator `p` and a real denominator `d`.
pub fn rho_commutes_with_rational(
    p: &StemPolynomial,
    den: &ComplexPoly,
    v: ImaginaryUnit,
    z: Complex64,
) -> Result<(Quaternion, Quaternion)> {
    let dz = den.eval(z);
    if dz.norm() <= SINGULAR_TOL * den.magnitude_bound(z).max(f64::MIN_POSITIVE) {
        return Err(Error::SingularDenominator);
    }
    let lhs = p.eval_stem(z).scale(dz.inv()).rho(v);
    let q = v.embed(z);
    let dq = den
        .coeffs()
        .iter()
        .rev()
        .fold(Quaternion::ZERO, |acc, &c| q * acc + Quaternion::real(c));
    let dq_inv = dq.inv().ok_or(Error::SingularDenominator)?;
    Ok((lhs, dq_inv * p.eval_slice(q)))
}
