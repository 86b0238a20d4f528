mod common;

use std::f64::consts::PI;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slicestem::norms::{bulk_l2, degree_growth_estimate, norm_sandwich, slice_l2, sphere_l2, SphereSample};
use slicestem::{Quaternion, StemPolynomial};

/// Hit-or-miss estimate of `int_{|q| < r} |f|^2` from the bounding cube,
/// with its standard error.
fn cube_monte_carlo(f: &StemPolynomial, r: f64, n: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vol = (2.0 * r).powi(4);
    let (mut s, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let q = random_quaternion(&mut rng, r);
        let g = if q.norm() < r { vol * f.eval_slice(q).norm_sqr() } else { 0.0 };
        s += g;
        s2 += g * g;
    }
    let mean = s / n as f64;
    let var = (s2 / n as f64 - mean * mean).max(0.0);
    (mean, (var / n as f64).sqrt())
}

#[test]
fn bulk_norm_agrees_with_a_cube_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..4 {
        let f = random_polynomial(&mut rng, k);
        let r = 0.6 + 0.2 * k as f64;
        let quad = bulk_l2(&f, r, 48, 96).unwrap();
        let (mc, se) = cube_monte_carlo(&f, r, 400_000, 100 + k as u64);
        assert!((quad - mc).abs() <= 4.0 * se, "degree {k}: quadrature {quad}, MC {mc} +- {se}");
    }
    let one = StemPolynomial::constant(Quaternion::ONE);
    assert!((bulk_l2(&one, 1.0, 16, 16).unwrap() - PI * PI / 2.0).abs() < 1e-12);
}

#[test]
fn sphere_grid_integrates_like_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let grid = SphereSample::fibonacci(8192);
    assert!((grid.total_weight() - 4.0 * PI).abs() < 1e-10);
    for _ in 0..10 {
        let f = random_polynomial(&mut rng, 3);
        let z = c(rng.random_range(-1.0..1.0), rng.random_range(0.1..1.0));
        let quad: f64 = grid
            .points
            .iter()
            .zip(&grid.weights)
            .map(|(v, w)| w * f.eval_slice(v.embed(z)).norm_sqr())
            .sum();
        let closed = sphere_l2(&f, z.re, z.im);
        assert!((quad - closed).abs() <= 1e-3 * closed, "{quad} vs {closed}");
    }
}

#[test]
fn maximum_modulus_sits_on_the_boundary_sphere() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let f = random_polynomial(&mut rng, 3);
        let r = 1.2;
        let interior = (0..5_000)
            .map(|_| f.eval_slice(random_in_ball(&mut rng, r)).norm())
            .fold(0.0f64, f64::max);
        let boundary = (0..100_000)
            .map(|_| {
                let q = random_quaternion(&mut rng, 1.0);
                f.eval_slice(q.scale(r / q.norm())).norm()
            })
            .fold(0.0f64, f64::max);
        assert!(interior <= boundary * 1.01, "interior {interior} above boundary {boundary}");
    }
}

#[test]
fn real_coefficients_have_constant_modulus_on_spheres() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let coeffs = (0..4).map(|_| Quaternion::real(rng.random_range(-1.0..1.0))).collect();
        let f = StemPolynomial::new(coeffs);
        let s = norm_sandwich(&f, rng.random_range(-1.0..1.0), rng.random_range(0.0..1.0), 512);
        assert!((s.max_sample - s.min_sample).abs() < 1e-12 * (1.0 + s.stem_norm), "{s:?}");
        assert!((s.max_sample - s.stem_norm).abs() < 1e-12 * (1.0 + s.stem_norm), "{s:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn slice_norm_is_independent_of_the_slice_for_real_coefficients(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = rng.random_range(0..=4);
        let coeffs = (0..=degree).map(|_| Quaternion::real(rng.random_range(-1.0..1.0))).collect();
        let f = StemPolynomial::new(coeffs);
        let base = slice_l2(&f, random_unit(&mut rng), 1.0, 16, 32).unwrap();
        for _ in 0..10 {
            let other = slice_l2(&f, random_unit(&mut rng), 1.0, 16, 32).unwrap();
            prop_assert!((other - base).abs() <= 1e-12 * (1.0 + base));
        }
    }

    #[test]
    fn slice_norm_of_a_monomial_sum_is_a_weighted_sum(seed in any::<u64>()) {
        // orthogonality of z^n on the disc: int |sum z^n a_n|^2 = sum pi r^{2n+2} |a_n|^2 / (n+1)
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = rng.random_range(0..=4);
        let f = random_polynomial(&mut rng, degree);
        let r = rng.random_range(0.5..1.5);
        let got = slice_l2(&f, random_unit(&mut rng), r, 16, 32).unwrap();
        let oracle: f64 = f.coeffs().iter().enumerate()
            .map(|(n, a)| PI * r.powi(2 * n as i32 + 2) * a.norm_sqr() / (n as f64 + 1.0))
            .sum();
        prop_assert!((got - oracle).abs() <= 1e-10 * (1.0 + oracle), "{got} vs {oracle}");
    }

    #[test]
    fn sandwich_holds_everywhere(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_polynomial(&mut rng, 3);
        let (x, y) = (rng.random_range(-1.5..1.5), rng.random_range(0.0..1.5));
        let s = norm_sandwich(&f, x, y, 1024);
        prop_assert!(s.holds(1e-12), "{s:?}");
        prop_assert!(s.max_sample <= s.max_closed + 1e-12);
        prop_assert!((sphere_l2(&f, x, y) - 4.0 * PI * s.stem_norm.powi(2)).abs() <= 1e-10 * (1.0 + s.stem_norm.powi(2)));
    }

    #[test]
    fn growth_rate_recovers_the_degree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = rng.random_range(0..=6);
        let f = random_polynomial(&mut rng, degree);
        prop_assume!(f.coeffs().last().unwrap().norm() > 0.1);
        let slope = degree_growth_estimate(&f, &[1e3, 1e4, 1e5, 1e6]).unwrap();
        prop_assert!((slope - degree as f64).abs() < 1e-2, "slope {slope} for degree {degree}");
    }
}
