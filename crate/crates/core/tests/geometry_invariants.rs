mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slicestem::hypercomplex::{rho, star};
use slicestem::kernels::{bergman_kernel, bergman_reproduce, cauchy_eval, cauchy_kernel, SliceCircle};
use slicestem::variety::{perp_pluecker, pluecker, unit_from_pluecker, UnitMatrix};
use slicestem::{Complex64, ComplexQuad, Quaternion, StemPolynomial};

fn random_quad(rng: &mut ChaCha8Rng) -> ComplexQuad {
    ComplexQuad(std::array::from_fn(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kernel_of_the_unit_matrix_is_the_variety_plane(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_unit(&mut rng);
        let a = UnitMatrix::new(v);
        let (z1, z2) = a.kernel_basis();
        let (a1, a2) = (c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)), c(rng.random_range(-2.0..2.0), 0.5));
        let z = z1.scale(a1) + z2.scale(a2);
        prop_assert!(a.apply(&z).norm() <= 1e-12 * (1.0 + z.norm()));
        prop_assert!(z.phi().norm() <= 1e-12 * (1.0 + z.norm_sqr()));
        prop_assert!(rho(v, &z).norm() <= 1e-12 * (1.0 + z.norm()));
    }

    #[test]
    fn variety_is_closed_under_star_with_anything(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (z1, _) = UnitMatrix::new(random_unit(&mut rng)).kernel_basis();
        let w = random_quad(&mut rng);
        prop_assert!(star(&z1, &w).phi().norm() <= 1e-12 * (1.0 + w.norm_sqr()));
        let (a, b) = (random_quad(&mut rng), random_quad(&mut rng));
        let lhs = star(&a, &b).phi();
        let rhs = a.phi() * b.phi();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + a.norm_sqr() * b.norm_sqr()));
    }

    #[test]
    fn pluecker_points_separate_units(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (random_unit(&mut rng), random_unit(&mut rng));
        prop_assume!(u.distance(v) > 1e-3);
        let (pu, pv) = (perp_pluecker(u).unwrap(), perp_pluecker(v).unwrap());
        prop_assert!(pu.projective_distance(&pv) > 1e-4);
        prop_assert!(unit_from_pluecker(&pu).unwrap().distance(u) < 1e-10);
        prop_assert!(pu.grassmann_residual().norm() < 1e-12);
    }

    #[test]
    fn pluecker_point_does_not_depend_on_the_basis(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_unit(&mut rng);
        let (z1, z2) = UnitMatrix::new(v).perp_basis();
        let m: [Complex64; 4] = std::array::from_fn(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det.norm() > 1e-2);
        let w1 = z1.scale(m[0]) + z2.scale(m[1]);
        let w2 = z1.scale(m[2]) + z2.scale(m[3]);
        let a = pluecker(&z1, &z2).unwrap();
        let b = pluecker(&w1, &w2).unwrap();
        prop_assert!(a.projective_distance(&b) < 1e-10);
    }

    #[test]
    fn conjugate_units_give_conjugate_planes(seed in any::<u64>()) {
        // A_{-v} is the entrywise conjugate of -A_v, so Z_{-v} = conj(Z_v).
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_unit(&mut rng);
        let (z1, z2) = UnitMatrix::new(v).kernel_basis();
        let minus = UnitMatrix::new(-v);
        prop_assert!(minus.apply(&z1.conj()).norm() < 1e-12);
        prop_assert!(minus.apply(&z2.conj()).norm() < 1e-12);
    }

    #[test]
    fn cauchy_formula_is_slice_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degree = rng.random_range(0..=5);
        let f = random_polynomial(&mut rng, degree);
        let q = random_in_ball(&mut rng, 0.8);
        let exact = f.eval_slice(q);
        for _ in 0..4 {
            let center = rng.random_range(-0.3..0.3);
            let circle = SliceCircle::new(random_unit(&mut rng), center, 1.6, 384).unwrap();
            let got = cauchy_eval(&f, &circle, q).unwrap();
            prop_assert!((got - exact).norm() <= 1e-9 * (1.0 + exact.norm()), "{got:?} vs {exact:?}");
        }
    }

    #[test]
    fn cauchy_kernel_inverts_the_slice_difference(seed in any::<u64>()) {
        // on a common slice S^{-1}_L(q, s) = (s - q)^{-1}
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_unit(&mut rng);
        let q = v.embed(c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let s = v.embed(c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        prop_assume!((s - q).norm() > 1e-2);
        let k = cauchy_kernel(q, s).unwrap();
        let direct = (s - q).inv().unwrap();
        prop_assert!((k - direct).norm() <= 1e-10 * direct.norm());
    }

    #[test]
    fn bergman_kernel_is_hermitian(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_in_ball(&mut rng, 0.9);
        let s = random_in_ball(&mut rng, 0.9);
        let a = bergman_kernel(q, s).unwrap();
        let b = bergman_kernel(s, q).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-9 * (1.0 + a.norm()));
    }
}

#[test]
fn bergman_reproduction_converges_in_the_radial_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let f = random_polynomial(&mut rng, 4);
    let v = random_unit(&mut rng);
    let q = random_in_ball(&mut rng, 0.7);
    let exact = f.eval_slice(q);
    let errors: Vec<f64> = [2usize, 4, 8, 16]
        .iter()
        .map(|&n| (bergman_reproduce(&f, v, q, n, 256).unwrap() - exact).norm())
        .collect();
    assert!(errors[0] > 1e-6, "{errors:?}");
    assert!(errors[3] < 1e-10, "{errors:?}");
}

#[test]
fn bergman_reproduces_off_slice_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let f = StemPolynomial::new(vec![Quaternion::J, Quaternion::new(0.5, 0.0, -1.0, 0.2), Quaternion::K]);
    for _ in 0..10 {
        let q = random_in_ball(&mut rng, 0.9);
        let got = bergman_reproduce(&f, random_unit(&mut rng), q, 64, 512).unwrap();
        let err = (got - f.eval_slice(q)).norm();
        assert!(err < 1e-9, "{} at |q| = {}", err, q.norm());
    }
}
