use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::classify::{find_all_zeros, weighted_zero_count, ZeroKind, BOUNDARY_GUARD};
use super::contour::Contour;
use crate::error::{Error, Result};
use crate::quadrature::trapezoid_angles;
use crate::stem::StemPolynomial;

/// The strict inequality is required with this relative margin, so that a
/// sampled pass is not an artifact of rounding.
const ROUCHE_SLACK: f64 = 1e-3;

/// Outcome of a sampled Rouche check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoucheReport {
    /// True when `|P - Q| < |P| + |Q|` held at every sample.
    pub holds: bool,
    /// First sample where the inequality failed.
    pub witness: Option<Complex64>,
    pub count_f: Option<i64>,
    pub count_g: Option<i64>,
}

/// Sample `|Phi o F - Phi o G| < |Phi o F| + |Phi o G|` on the contour and,
/// when it holds everywhere, compute both weighted counts.
pub fn rouche_same_count(
    f: &StemPolynomial,
    g: &StemPolynomial,
    c: &Contour,
    samples: usize,
) -> Result<RoucheReport> {
    if !c.is_symmetric() {
        return Err(Error::AsymmetricContour);
    }
    let (pf, pg) = (f.symmetrize(), g.symmetrize());
    let witness = c.sample_points(samples.max(1)).into_iter().find(|&z| {
        let (a, b) = (pf.eval(z), pg.eval(z));
        (a - b).norm() >= (1.0 - ROUCHE_SLACK) * (a.norm() + b.norm())
    });
    if witness.is_some() {
        return Ok(RoucheReport { holds: false, witness, count_f: None, count_g: None });
    }
    Ok(RoucheReport {
        holds: true,
        witness: None,
        count_f: Some(weighted_zero_count(f, c)?),
        count_g: Some(weighted_zero_count(g, c)?),
    })
}

/// Both sides of the Jensen identity for `Phi o F` on the disc `|z| < R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JensenReport {
    pub lhs: f64,
    pub rhs: f64,
}

/// `lhs = int_0^R n_f(t)/t dt` with `n_f = k_f + 2 m_f`, from the located
/// zeros; `rhs = (1/4 pi) int log|Phi o F(R e^{i theta})| d theta
/// - (1/2) log|Phi o F(0)|` by the trapezoid rule with `nodes` points.
pub fn jensen_check(f: &StemPolynomial, radius: f64, nodes: usize) -> Result<JensenReport> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.symmetrize();
    let at_origin = p.coeffs()[0].abs();
    if at_origin <= 1e-14 * p.max_coeff() {
        return Err(Error::UndefinedAtOrigin);
    }
    let mut lhs = 0.0;
    for rec in find_all_zeros(f)? {
        let size = rec.stem_point.norm();
        if (size - radius).abs() <= BOUNDARY_GUARD * radius.max(1.0) {
            return Err(Error::RootOnContour(rec.stem_point));
        }
        if size >= radius {
            continue;
        }
        let weight = match rec.kind {
            ZeroKind::Spherical => 2 * rec.order,
            ZeroKind::Isolated | ZeroKind::Real => rec.order,
            ZeroKind::Pole => unreachable!("polynomials have no poles"),
        };
        lhs += weight as f64 * (radius / size).ln();
    }
    let n = nodes.max(8);
    let mean_log: f64 = trapezoid_angles(n)
        .map(|t| p.eval(Complex64::from_polar(radius, t)).norm().ln())
        .sum::<f64>()
        / n as f64;
    // (1/4 pi) * 2 pi * mean = mean / 2
    let rhs = 0.5 * mean_log - 0.5 * at_origin.ln();
    debug_assert!(rhs.is_finite() || PI.is_nan());
    Ok(JensenReport { lhs, rhs })
}

/// Weighted counts along a sequence and at its limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HurwitzReport {
    /// `None` where a zero sits on the contour.
    pub counts: Vec<Option<i64>>,
    pub limit_count: Option<i64>,
    /// Index from which every count equals the limit count.
    pub settles_at: Option<usize>,
}

impl HurwitzReport {
    pub fn eventually_matches_limit(&self) -> bool {
        self.settles_at.is_some()
    }
}

fn count_or_none(f: &StemPolynomial, c: &Contour) -> Result<Option<i64>> {
    match weighted_zero_count(f, c) {
        Ok(k) => Ok(Some(k)),
        Err(Error::RootOnContour(_)) | Err(Error::NonConvergence(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Weighted zero counts of each `f_n` and of the limit `f` on a symmetric
/// contour.
pub fn hurwitz_probe(fs: &[StemPolynomial], limit: &StemPolynomial, region: &Contour) -> Result<HurwitzReport> {
    if !region.is_symmetric() {
        return Err(Error::AsymmetricContour);
    }
    let counts = fs.iter().map(|f| count_or_none(f, region)).collect::<Result<Vec<_>>>()?;
    let limit_count = count_or_none(limit, region)?;
    let settles_at = limit_count.and_then(|l| {
        let tail = counts.iter().rev().take_while(|c| **c == Some(l)).count();
        (tail > 0).then_some(counts.len() - tail)
    });
    Ok(HurwitzReport { counts, limit_count, settles_at })
}
