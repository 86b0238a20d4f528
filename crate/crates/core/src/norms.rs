//! Norm relations between a slice function `f` and its stem `F`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercomplex::ImaginaryUnit;
use crate::quadrature::{gauss_legendre, trapezoid_angles};
use crate::stem::StemPolynomial;

/// Default size of the Fibonacci grid used to scan the sphere of units.
pub const DEFAULT_SPHERE_GRID: usize = 4096;

/// Points on the unit sphere of imaginary units with area weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSample {
    pub points: Vec<ImaginaryUnit>,
    pub weights: Vec<f64>,
}

fn unit_from_height(h: f64, phi: f64) -> ImaginaryUnit {
    let r = (1.0 - h * h).max(0.0).sqrt();
    ImaginaryUnit::from_direction(r * phi.cos(), r * phi.sin(), h).expect("point on the sphere")
}

impl SphereSample {
    /// Fibonacci lattice with `n` equal-weight points.
    pub fn fibonacci(n: usize) -> Self {
        let n = n.max(1);
        let golden = PI * (3.0 - 5f64.sqrt());
        let points = (0..n)
            .map(|k| {
                let h = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
                unit_from_height(h, golden * k as f64)
            })
            .collect();
        SphereSample { points, weights: vec![4.0 * PI / n as f64; n] }
    }

    /// `n` independent uniform points: uniform height and uniform angle,
    /// which is area-preserving by Archimedes' hat-box theorem.
    pub fn uniform(n: usize, seed: u64) -> Self {
        let n = n.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..n)
            .map(|_| unit_from_height(rng.random_range(-1.0..=1.0), rng.random_range(0.0..TAU)))
            .collect();
        SphereSample { points, weights: vec![4.0 * PI / n as f64; n] }
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `int_S |f(x + v y)|^2 d sigma(v) = 4 pi |F(x + iota y)|^2`.
pub fn sphere_l2(f: &StemPolynomial, x: f64, y: f64) -> f64 {
    4.0 * PI * f.eval_stem(Complex64::new(x, y)).norm_sqr()
}

/// A Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte-Carlo estimate of `int_S |f(x + v y)|^2 d sigma(v)` from `n`
/// uniform units drawn with the given seed.
pub fn sphere_l2_mc(f: &StemPolynomial, x: f64, y: f64, n: usize, seed: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..n {
        let v = unit_from_height(rng.random_range(-1.0..=1.0), rng.random_range(0.0..TAU));
        let value = 4.0 * PI * f.eval_slice(v.embed(Complex64::new(x, y))).norm_sqr();
        sum += value;
        sum_sq += value * value;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = if n > 1 { ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0) } else { 0.0 };
    Ok(McEstimate { value: mean, std_error: (var / nf).sqrt(), samples: n })
}

/// Tensor rule on the disc `|z| < radius`: `(z, weight)` with the radial
/// Jacobian included.
fn disc_rule(radius: f64, radial: usize, angular: usize) -> Vec<(Complex64, f64)> {
    let dtheta = TAU / angular as f64;
    let angles: Vec<Complex64> = trapezoid_angles(angular).map(|t| Complex64::from_polar(1.0, t)).collect();
    gauss_legendre(radial, 0.0, radius)
        .into_iter()
        .flat_map(|(r, w)| angles.iter().map(move |e| (e * r, w * r * dtheta)))
        .collect()
}

fn check_quadrature(radius: f64, radial: usize, angular: usize) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    if radial == 0 || angular == 0 {
        return Err(Error::InvalidArgument("node counts must be positive".into()));
    }
    Ok(())
}

/// `int_{|z| < radius} |f(x + v y)|^2 dx dy` on the slice `C_v`.
pub fn slice_l2(f: &StemPolynomial, v: ImaginaryUnit, radius: f64, radial: usize, angular: usize) -> Result<f64> {
    check_quadrature(radius, radial, angular)?;
    Ok(disc_rule(radius, radial, angular)
        .into_iter()
        .map(|(z, w)| w * f.eval_slice(v.embed(z)).norm_sqr())
        .sum())
}

/// `int_{|q| < radius} |f(q)|^2 dx_0 .. dx_3`, computed as
/// `4 pi int y^2 |F(x + iota y)|^2 dx dy` over the upper half disc, which
/// equals `2 pi` times the same integral over the full disc.
pub fn bulk_l2(f: &StemPolynomial, radius: f64, radial: usize, angular: usize) -> Result<f64> {
    check_quadrature(radius, radial, angular)?;
    Ok(2.0 * PI
        * disc_rule(radius, radial, angular)
            .into_iter()
            .map(|(z, w)| w * z.im * z.im * f.eval_stem(z).norm_sqr())
            .sum::<f64>())
}

/// `min_v |f(x + v y)|` over a grid, `|F(x + iota y)|`, the closed-form
/// bound `|alpha| + |beta|` on the maximum, and the sampled maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSandwich {
    pub min_sample: f64,
    pub stem_norm: f64,
    pub max_closed: f64,
    pub max_sample: f64,
}

impl NormSandwich {
    /// `min_sample <= stem_norm <= max_closed`, with slack `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.min_sample <= self.stem_norm + tol && self.stem_norm <= self.max_closed + tol
    }
}

pub fn norm_sandwich(f: &StemPolynomial, x: f64, y: f64, grid: usize) -> NormSandwich {
    let z = Complex64::new(x, y);
    let stem = f.eval_stem(z);
    let (min_sample, max_sample) = SphereSample::fibonacci(grid)
        .points
        .iter()
        .map(|v| f.eval_slice(v.embed(z)).norm())
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), a| (lo.min(a), hi.max(a)));
    NormSandwich {
        min_sample,
        stem_norm: stem.norm(),
        max_closed: stem.re().norm() + stem.im().norm(),
        max_sample,
    }
}

/// Least-squares slope of `log max_{|z| = R} |F(z)|` against `log R`.
pub fn degree_growth_estimate(f: &StemPolynomial, radii: &[f64]) -> Result<f64> {
    if radii.len() < 2 || radii.windows(2).any(|w| !(w[1] > w[0])) || !(radii[0] > 0.0) {
        return Err(Error::InvalidArgument("need at least two increasing positive radii".into()));
    }
    let points: Vec<(f64, f64)> = radii
        .iter()
        .map(|&r| {
            let m = trapezoid_angles(512)
                .map(|t| f.eval_stem(Complex64::from_polar(r, t)).norm())
                .fold(0.0f64, f64::max);
            (r.ln(), m.ln())
        })
        .collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
