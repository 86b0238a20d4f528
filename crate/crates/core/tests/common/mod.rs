//! Random inputs with known zero structure, shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use slicestem::zeros::Contour;
use slicestem::{Complex64, ComplexPoly, ImaginaryUnit, Quaternion, StemPolynomial};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_quaternion(rng: &mut ChaCha8Rng, scale: f64) -> Quaternion {
    Quaternion::from_array(std::array::from_fn(|_| rng.random_range(-scale..scale)))
}

pub fn random_unit(rng: &mut ChaCha8Rng) -> ImaginaryUnit {
    loop {
        let [a, b, cc]: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = (a * a + b * b + cc * cc).sqrt();
        if (1e-3..=1.0).contains(&n) {
            return ImaginaryUnit::from_direction(a, b, cc).unwrap();
        }
    }
}

/// Uniform point of the open ball of the given radius.
pub fn random_in_ball(rng: &mut ChaCha8Rng, radius: f64) -> Quaternion {
    loop {
        let q = random_quaternion(rng, 1.0);
        if q.norm() < 1.0 {
            return q.scale(radius);
        }
    }
}

pub fn random_polynomial(rng: &mut ChaCha8Rng, degree: usize) -> StemPolynomial {
    StemPolynomial::new((0..=degree).map(|_| random_quaternion(rng, 1.0)).collect())
}

/// One factor of a constructed product.
#[derive(Debug, Clone, Copy)]
pub enum Factor {
    /// `q - p` with `p` off the real axis: one isolated zero.
    Linear(Quaternion),
    /// `q - a`, a real zero.
    Real(f64),
    /// `q^2 - 2 x q + x^2 + y^2`: the whole sphere of `x + v y`.
    Sphere(Complex64),
}

impl Factor {
    pub fn polynomial(&self) -> StemPolynomial {
        match *self {
            Factor::Linear(p) => StemPolynomial::linear(p),
            Factor::Real(a) => StemPolynomial::linear(Quaternion::real(a)),
            Factor::Sphere(w) => StemPolynomial::from_real(&ComplexPoly::new(vec![
                w.norm_sqr(),
                -2.0 * w.re,
                1.0,
            ])),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Factor::Sphere(_) => 2,
            _ => 1,
        }
    }

    /// Stem point in the closed upper half plane.
    pub fn stem(&self) -> Complex64 {
        match *self {
            Factor::Linear(p) => p.stem_point(),
            Factor::Real(a) => c(a, 0.0),
            Factor::Sphere(w) => w,
        }
    }

    /// Multiplicity of `stem` (and of its conjugate) as a root of `Phi o F`.
    pub fn phi_multiplicity(&self) -> i64 {
        match self {
            Factor::Linear(_) => 1,
            Factor::Real(_) => 2,
            Factor::Sphere(_) => 2,
        }
    }

    /// All roots of the factor's symmetrization, with multiplicity.
    pub fn phi_roots(&self) -> Vec<(Complex64, i64)> {
        let w = self.stem();
        match self {
            Factor::Real(_) => vec![(w, 2)],
            _ => vec![(w, self.phi_multiplicity()), (w.conj(), self.phi_multiplicity())],
        }
    }
}

fn random_stem(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.random_range(-2.0..2.0), rng.random_range(0.25..1.8))
}

pub fn random_factor(rng: &mut ChaCha8Rng, max_degree: usize) -> Factor {
    let roll = rng.random_range(0..10);
    if roll < 2 {
        Factor::Real(rng.random_range(-2.0..2.0))
    } else if roll < 4 && max_degree >= 2 {
        Factor::Sphere(random_stem(rng))
    } else {
        let w = random_stem(rng);
        Factor::Linear(random_unit(rng).embed(w))
    }
}

/// Product of random factors, total degree in `1..=max_degree`, times a
/// random constant on the right. Factors are kept apart so no two share a
/// sphere.
pub fn random_factored(rng: &mut ChaCha8Rng, max_degree: usize) -> (StemPolynomial, Vec<Factor>) {
    let target = rng.random_range(1..=max_degree);
    let mut factors: Vec<Factor> = Vec::new();
    let mut degree = 0;
    while degree < target {
        let f = random_factor(rng, target - degree);
        let apart = factors.iter().all(|g| (g.stem() - f.stem()).norm() > 0.2);
        if apart {
            degree += f.degree();
            factors.push(f);
        }
    }
    let constant = loop {
        let q = random_quaternion(rng, 1.0);
        if q.norm() > 0.3 {
            break q;
        }
    };
    let f = factors
        .iter()
        .fold(StemPolynomial::constant(Quaternion::ONE), |acc, g| acc.star_product(&g.polynomial()))
        .star_product(&StemPolynomial::constant(constant));
    (f, factors)
}

/// A circle centred on the real axis whose boundary stays at least `gap`
/// away from every listed point.
pub fn symmetric_circle_avoiding(rng: &mut ChaCha8Rng, points: &[Complex64], gap: f64) -> Contour {
    loop {
        let center = rng.random_range(-1.0..1.0);
        let radius = rng.random_range(0.3..3.0);
        let clear = points.iter().all(|p| ((p - center).norm() - radius).abs() > gap);
        if clear {
            return Contour::circle(c(center, 0.0), radius).unwrap();
        }
    }
}

pub fn rectangle_avoiding(rng: &mut ChaCha8Rng, points: &[Complex64], gap: f64) -> Contour {
    loop {
        let (x0, x1) = (rng.random_range(-2.8..2.0), rng.random_range(0.3..3.0));
        let (y0, y1) = (rng.random_range(-2.2..1.8), rng.random_range(0.3..2.5));
        let rect = Contour::rectangle(c(x0, y0), c(x0 + x1, y0 + y1)).unwrap();
        if points.iter().all(|p| rect.distance(*p) > gap) {
            return rect;
        }
    }
}
