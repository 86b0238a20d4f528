use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots::roots_with_multiplicity;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, trapezoid_angles};
use crate::stem::ComplexPoly;

/// Reflection tolerance for [`Contour::is_symmetric`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A sample with `|P(z)|` at or below this fraction of `sum |a_n||z|^n` is
/// taken to be a root lying on the contour. Horner rounding is about
/// `n * eps` of that bound, so anything larger is a genuine value.
const ON_CONTOUR_TOL: f64 = 1e-14;

/// Roots closer than this (relative to the contour scale) are on it.
const CONTOUR_GUARD: f64 = 1e-8;

const START_NODES: usize = 64;
const MAX_NODES: usize = 1 << 20;

/// A counterclockwise contour in the stem plane.
///
/// JSON: `{"circle": {"center": [re, im], "radius": r}}` or
/// `{"rectangle": {"corner_min": [re, im], "corner_max": [re, im]}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ContourRepr", into = "ContourRepr")]
pub enum Contour {
    Circle { center: Complex64, radius: f64 },
    Rectangle { corner_min: Complex64, corner_max: Complex64 },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ContourRepr {
    Circle { center: Complex64, radius: f64 },
    Rectangle { corner_min: Complex64, corner_max: Complex64 },
}

impl TryFrom<ContourRepr> for Contour {
    type Error = Error;
    fn try_from(r: ContourRepr) -> Result<Self> {
        match r {
            ContourRepr::Circle { center, radius } => Contour::circle(center, radius),
            ContourRepr::Rectangle { corner_min, corner_max } => {
                Contour::rectangle(corner_min, corner_max)
            }
        }
    }
}

impl From<Contour> for ContourRepr {
    fn from(c: Contour) -> Self {
        match c {
            Contour::Circle { center, radius } => ContourRepr::Circle { center, radius },
            Contour::Rectangle { corner_min, corner_max } => {
                ContourRepr::Rectangle { corner_min, corner_max }
            }
        }
    }
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.is_finite() {
            return Err(Error::InvalidContour(format!("radius must be positive, got {radius}")));
        }
        Ok(Contour::Circle { center, radius })
    }

    pub fn rectangle(corner_min: Complex64, corner_max: Complex64) -> Result<Self> {
        if !(corner_min.re < corner_max.re && corner_min.im < corner_max.im)
            || !corner_min.is_finite()
            || !corner_max.is_finite()
        {
            return Err(Error::InvalidContour(format!(
                "corner_min {corner_min} must be strictly below corner_max {corner_max}"
            )));
        }
        Ok(Contour::Rectangle { corner_min, corner_max })
    }

    /// Circle of the given radius about the origin.
    pub fn disc(radius: f64) -> Result<Self> {
        Contour::circle(Complex64::new(0.0, 0.0), radius)
    }

    /// A length scale for relative tolerances.
    pub fn scale(&self) -> f64 {
        match *self {
            Contour::Circle { center, radius } => center.norm() + radius,
            Contour::Rectangle { corner_min, corner_max } => corner_min.norm().max(corner_max.norm()),
        }
        .max(1.0)
    }

    /// True when reflecting across the real axis maps the contour to itself.
    pub fn is_symmetric(&self) -> bool {
        let tol = SYMMETRY_TOL * self.scale();
        match *self {
            Contour::Circle { center, .. } => center.im.abs() <= tol,
            Contour::Rectangle { corner_min, corner_max } => {
                (corner_min.im + corner_max.im).abs() <= tol
            }
        }
    }

    /// Strict interior membership.
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Contour::Circle { center, radius } => (z - center).norm() < radius,
            Contour::Rectangle { corner_min, corner_max } => {
                z.re > corner_min.re && z.re < corner_max.re && z.im > corner_min.im && z.im < corner_max.im
            }
        }
    }

    /// Euclidean distance from `z` to the contour curve.
    pub fn distance(&self, z: Complex64) -> f64 {
        match *self {
            Contour::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            Contour::Rectangle { corner_min, corner_max } => {
                let dx_out = (corner_min.re - z.re).max(z.re - corner_max.re).max(0.0);
                let dy_out = (corner_min.im - z.im).max(z.im - corner_max.im).max(0.0);
                if dx_out > 0.0 || dy_out > 0.0 {
                    dx_out.hypot(dy_out)
                } else {
                    (z.re - corner_min.re)
                        .min(corner_max.re - z.re)
                        .min(z.im - corner_min.im)
                        .min(corner_max.im - z.im)
                }
            }
        }
    }

    /// `n` points spread along the contour, for pointwise checks.
    pub fn sample_points(&self, n: usize) -> Vec<Complex64> {
        match *self {
            Contour::Circle { center, radius } => trapezoid_angles(n)
                .map(|t| center + Complex64::from_polar(radius, t))
                .collect(),
            Contour::Rectangle { .. } => {
                let corners = self.corners();
                let lengths: Vec<f64> = (0..4).map(|e| (corners[(e + 1) % 4] - corners[e]).norm()).collect();
                let perimeter: f64 = lengths.iter().sum();
                (0..n)
                    .map(|k| {
                        let mut s = perimeter * (k as f64 + 0.5) / n as f64;
                        let mut e = 0;
                        while e < 3 && s > lengths[e] {
                            s -= lengths[e];
                            e += 1;
                        }
                        let dir = (corners[(e + 1) % 4] - corners[e]) / lengths[e];
                        corners[e] + dir * s
                    })
                    .collect()
            }
        }
    }

    fn corners(&self) -> [Complex64; 4] {
        match *self {
            Contour::Rectangle { corner_min: a, corner_max: b } => [
                a,
                Complex64::new(b.re, a.im),
                b,
                Complex64::new(a.re, b.im),
            ],
            Contour::Circle { .. } => unreachable!("corners of a circle"),
        }
    }

    /// One quadrature estimate of `(1/2 pi i) \oint g(z) dz` where the
    /// integrand is supplied as `g(z)`; `n` is the node count (total for a
    /// circle, per edge for a rectangle).
    fn integrate<G>(&self, n: usize, g: &mut G) -> Result<Complex64>
    where
        G: FnMut(Complex64) -> Result<Complex64>,
    {
        match *self {
            Contour::Circle { center, radius } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in trapezoid_angles(n) {
                    let d = Complex64::from_polar(radius, t);
                    acc += g(center + d)? * d;
                }
                Ok(acc / n as f64)
            }
            Contour::Rectangle { .. } => {
                let corners = self.corners();
                let rule = gauss_legendre(n, 0.0, 1.0);
                let mut acc = Complex64::new(0.0, 0.0);
                for e in 0..4 {
                    let a = corners[e];
                    let dz = corners[(e + 1) % 4] - a;
                    for &(s, w) in &rule {
                        acc += g(a + dz * s)? * dz * w;
                    }
                }
                Ok(acc / Complex64::new(0.0, TAU))
            }
        }
    }

    /// Node count at a refinement level, and the total number of samples.
    fn nodes_at(&self, level: u32) -> (usize, usize) {
        let n = START_NODES << level;
        match self {
            Contour::Circle { .. } => (n, n),
            Contour::Rectangle { .. } => (n, 4 * n),
        }
    }

    /// Winding of an integrand `g = P'/P` (or a sum of such) by successive
    /// doubling until two levels agree on the same integer.
    pub(crate) fn winding_of<G>(&self, mut g: G) -> Result<i64>
    where
        G: FnMut(Complex64) -> Result<Complex64>,
    {
        let mut prev: Option<f64> = None;
        let mut level = 0;
        loop {
            let (n, total) = self.nodes_at(level);
            if total > MAX_NODES {
                return Err(Error::NonConvergence(total / 2));
            }
            let value = self.integrate(n, &mut g)?.re;
            if let Some(p) = prev {
                let close_to_integer = (value - value.round()).abs() < 1e-3;
                if p.round() == value.round() && (p - value).abs() < 0.25 && close_to_integer {
                    return Ok(value.round() as i64);
                }
            }
            prev = Some(value);
            level += 1;
        }
    }
}

/// `P'(z)/P(z)`, failing when `z` sits on a root of `P`.
pub(crate) fn log_derivative(p: &ComplexPoly, z: Complex64) -> Result<Complex64> {
    let (v, d) = p.eval_with_derivative(z);
    if v.norm() <= ON_CONTOUR_TOL * p.magnitude_bound(z) {
        return Err(Error::RootOnContour(z));
    }
    Ok(d / v)
}

/// Winding of `p'/p` without checking for roots near the contour. A root
/// exactly on the curve but between nodes can yield the principal value,
/// which may itself be an integer.
pub(crate) fn winding_unguarded(p: &ComplexPoly, c: &Contour) -> Result<i64> {
    c.winding_of(|z| log_derivative(p, z))
}

fn guard(p: &ComplexPoly, c: &Contour) -> Result<()> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let tol = CONTOUR_GUARD * c.scale();
    match roots_with_multiplicity(p)?.into_iter().find(|(z, _)| c.distance(*z) <= tol) {
        Some((z, _)) => Err(Error::RootOnContour(z)),
        None => Ok(()),
    }
}

/// Number of roots of `p` inside `c` (with multiplicity), from the argument
/// principle applied to `p'/p`.
pub fn winding_log_derivative(p: &ComplexPoly, c: &Contour) -> Result<i64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    guard(p, c)?;
    winding_unguarded(p, c)
}

/// Zeros minus poles of `num / den` inside `c`.
pub fn winding_rational(num: &ComplexPoly, den: &ComplexPoly, c: &Contour) -> Result<i64> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    guard(num, c)?;
    guard(den, c)?;
    c.winding_of(|z| Ok(log_derivative(num, z)? - log_derivative(den, z)?))
}
