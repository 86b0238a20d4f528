use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Gauss-Legendre nodes and weights mapped from `[-1, 1]` onto `[a, b]`.
pub(crate) fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n.max(2)).expect("nonzero node count");
    let rule = GaussLegendre::new(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut out: Vec<(f64, f64)> = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect();
    out.sort_by(|p, q| p.0.total_cmp(&q.0));
    out
}

/// Equispaced angles `2 pi k / n` for `k = 0 .. n`.
pub(crate) fn trapezoid_angles(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| TAU * k as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = gauss_legendre(8, 0.0, 2.0);
        let s: f64 = rule.iter().map(|(x, w)| w * x.powi(7)).sum();
        assert!((s - 2f64.powi(8) / 8.0).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_is_spectral_on_periodic() {
        let n = 32;
        let s: f64 = trapezoid_angles(n).map(|t| (t.cos()).exp()).sum::<f64>() * TAU / n as f64;
        // 2 pi I_0(1)
        assert!((s - TAU * 1.266_065_877_752_008_4).abs() < 1e-13);
    }
}
