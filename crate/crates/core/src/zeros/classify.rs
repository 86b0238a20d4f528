use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contour::{winding_log_derivative, winding_rational, Contour};
use super::roots::roots_with_multiplicity;
use crate::error::{Error, Result};
use crate::hypercomplex::{unit_from_zero_tol, ImaginaryUnit, Quaternion};
use crate::stem::{ComplexPoly, StemPolynomial, StemRational};

/// A Taylor coefficient of the stem counts as zero below this fraction of
/// its natural size `taylor_bound`.
pub const STEM_ZERO_TOL: f64 = 1e-8;
/// Distinct candidate stem points closer than this (relative) are merged.
const MERGE_TOL: f64 = 1e-6;
/// Contours passing this close (relative) to a zero or pole are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-6;
/// Membership tolerance when recovering the unit of an isolated zero from a
/// numerically located stem root.
const UNIT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroKind {
    Real,
    Isolated,
    Spherical,
    Pole,
}

/// One zero or pole, represented by its stem point with `Im >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub kind: ZeroKind,
    #[serde(rename = "stem")]
    pub stem_point: Complex64,
    pub unit: Option<ImaginaryUnit>,
    pub order: usize,
}

impl ZeroRecord {
    /// The zero as a quaternion: `x + v y` for isolated zeros, and the
    /// representative `x + i y` of the sphere otherwise.
    pub fn point(&self) -> Quaternion {
        self.unit.unwrap_or(ImaginaryUnit::I).embed(self.stem_point)
    }
}

/// Tallies of the meromorphic counting identity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub k0: usize,
    pub k1: usize,
    pub m0: usize,
    pub m1: usize,
    pub r: usize,
    pub p0: usize,
    pub p1: usize,
    pub winding: i64,
}

impl CountReport {
    /// `2 k0 + k1 + 2 r + 4 m0 + 2 m1 - 2 p0 - p1`.
    pub fn predicted_winding(&self) -> i64 {
        (2 * self.k0 + self.k1 + 2 * self.r + 4 * self.m0 + 2 * self.m1) as i64
            - (2 * self.p0 + self.p1) as i64
    }

    pub fn is_consistent(&self) -> bool {
        self.predicted_winding() == self.winding
    }
}

/// Inputs accepted by the zero-analysis routines.
pub trait SliceFunction {
    fn numerator(&self) -> &StemPolynomial;
    fn denominator(&self) -> Option<&ComplexPoly>;
}

impl SliceFunction for StemPolynomial {
    fn numerator(&self) -> &StemPolynomial {
        self
    }
    fn denominator(&self) -> Option<&ComplexPoly> {
        None
    }
}

impl SliceFunction for StemRational {
    fn numerator(&self) -> &StemPolynomial {
        self.num()
    }
    fn denominator(&self) -> Option<&ComplexPoly> {
        Some(self.den())
    }
}

/// Multiplicity of `w` as a root of `p`, by Taylor coefficients at `w`.
fn multiplicity_at(p: &ComplexPoly, w: Complex64, tol: f64) -> usize {
    let mut q = p.clone();
    let mut factorial = 1.0;
    for j in 0.. {
        if q.is_zero() {
            return j;
        }
        if j > 0 {
            factorial *= j as f64;
        }
        if q.eval(w).norm() / factorial > tol * q.magnitude_bound(w) / factorial {
            return j;
        }
        q = q.derivative();
    }
    unreachable!()
}

/// Vanishing order of the stem `N` at `w`, at most `cap`.
fn stem_vanishing_order(n: &StemPolynomial, w: Complex64, cap: usize) -> usize {
    (0..cap)
        .find(|&j| n.taylor_coefficient(w, j).norm() > STEM_ZERO_TOL * n.taylor_bound(w, j))
        .unwrap_or(cap)
}

/// A candidate stem point with the multiplicities of `Phi o N` and `D`.
struct Candidate {
    w: Complex64,
    mu_n: usize,
    mu_d: usize,
}

fn candidates(n_sym: &ComplexPoly, den: Option<&ComplexPoly>) -> Result<Vec<Candidate>> {
    let mut out: Vec<Candidate> = Vec::new();
    let upper = |z: Complex64| if z.im < 0.0 { z.conj() } else { z };
    let add = |z: Complex64, mu: usize, is_num: bool, out: &mut Vec<Candidate>| {
        let z = upper(z);
        let tol = MERGE_TOL * z.norm().max(1.0);
        if let Some(c) = out.iter_mut().find(|c| (c.w - z).norm() <= tol) {
            if is_num {
                c.mu_n = mu;
                c.w = z;
            } else {
                c.mu_d = mu;
            }
        } else {
            out.push(Candidate { w: z, mu_n: if is_num { mu } else { 0 }, mu_d: if is_num { 0 } else { mu } });
        }
    };
    if n_sym.degree().unwrap_or(0) > 0 {
        for (z, m) in roots_with_multiplicity(n_sym)? {
            if z.im >= 0.0 {
                add(z, m, true, &mut out);
            }
        }
    }
    if let Some(d) = den {
        if d.degree().unwrap_or(0) > 0 {
            for (z, m) in roots_with_multiplicity(d)? {
                if z.im >= 0.0 {
                    add(z, m, false, &mut out);
                }
            }
        }
    }
    Ok(out)
}

/// Classify the zeros and poles at one stem point.
fn classify(n: &StemPolynomial, c: &Candidate) -> Result<Vec<ZeroRecord>> {
    let w = c.w;
    let mut out = Vec::new();
    let real = w.im == 0.0;
    let s = if real {
        c.mu_n / 2
    } else {
        stem_vanishing_order(n, w, c.mu_n / 2)
    };
    let e = s as i64 - c.mu_d as i64;
    let t = c.mu_n - 2 * s;
    let record = |kind, order, unit| ZeroRecord { kind, stem_point: w, unit, order };
    if real {
        match e {
            e if e > 0 => out.push(record(ZeroKind::Real, e as usize, None)),
            e if e < 0 => out.push(record(ZeroKind::Pole, (-e) as usize, None)),
            _ => {}
        }
        return Ok(out);
    }
    match e {
        e if e > 0 => out.push(record(ZeroKind::Spherical, e as usize, None)),
        e if e < 0 => out.push(record(ZeroKind::Pole, (-2 * e) as usize, None)),
        _ => {}
    }
    if t > 0 {
        let lead = n.taylor_coefficient(w, s);
        let unit = unit_from_zero_tol(&lead, UNIT_TOL)?;
        out.push(record(ZeroKind::Isolated, t, Some(unit)));
    }
    Ok(out)
}

fn all_records<F: SliceFunction + ?Sized>(f: &F) -> Result<Vec<ZeroRecord>> {
    let n = f.numerator();
    if n.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n_sym = n.symmetrize();
    let mut out = Vec::new();
    for c in candidates(&n_sym, f.denominator())? {
        out.extend(classify(n, &c)?);
    }
    Ok(out)
}

/// Zeros and poles whose stem point or its conjugate lies inside `region`,
/// classified as real, isolated, spherical or pole.
pub fn find_zeros<F: SliceFunction + ?Sized>(f: &F, region: &Contour) -> Result<Vec<ZeroRecord>> {
    Ok(all_records(f)?
        .into_iter()
        .filter(|r| region.contains(r.stem_point) || region.contains(r.stem_point.conj()))
        .collect())
}

/// Every zero and pole, with no region restriction.
pub fn find_all_zeros<F: SliceFunction + ?Sized>(f: &F) -> Result<Vec<ZeroRecord>> {
    all_records(f)
}

/// Order of `f` on the sphere `[q]`: the multiplicity of the stem point in
/// `Phi o N` minus twice its multiplicity in the denominator, halved at real
/// points.
pub fn sphere_order<F: SliceFunction + ?Sized>(f: &F, q: Quaternion) -> Result<i64> {
    let n = f.numerator();
    if n.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let w = q.stem_point();
    let mu_n = multiplicity_at(&n.symmetrize(), w, STEM_ZERO_TOL) as i64;
    let mu_d = f
        .denominator()
        .map(|d| multiplicity_at(d, w, STEM_ZERO_TOL) as i64)
        .unwrap_or(0);
    let order = mu_n - 2 * mu_d;
    Ok(if w.im == 0.0 { order / 2 } else { order })
}

fn guard_boundary(records: &[ZeroRecord], c: &Contour) -> Result<()> {
    let tol = BOUNDARY_GUARD * c.scale();
    for r in records {
        for z in [r.stem_point, r.stem_point.conj()] {
            if c.distance(z) <= tol {
                return Err(Error::RootOnContour(z));
            }
        }
    }
    Ok(())
}

/// Tallies of zeros and poles inside `c`, together with the winding of
/// `Phi o F` computed independently by quadrature.
pub fn count_in_region<F: SliceFunction + ?Sized>(f: &F, c: &Contour) -> Result<CountReport> {
    let all = all_records(f)?;
    guard_boundary(&all, c)?;
    let mut report = CountReport::default();
    for rec in &all {
        let a = c.contains(rec.stem_point);
        let b = c.contains(rec.stem_point.conj());
        let both = a && b;
        if !(a || b) {
            continue;
        }
        let k = rec.order;
        match (rec.kind, both) {
            (ZeroKind::Real, _) => report.r += k,
            (ZeroKind::Isolated, true) => report.k0 += k,
            (ZeroKind::Isolated, false) => report.k1 += k,
            (ZeroKind::Spherical, true) => report.m0 += k,
            (ZeroKind::Spherical, false) => report.m1 += k,
            (ZeroKind::Pole, true) => report.p0 += k,
            (ZeroKind::Pole, false) => report.p1 += k,
        }
    }
    let n_sym = f.numerator().symmetrize();
    report.winding = match f.denominator() {
        None => winding_log_derivative(&n_sym, c)?,
        Some(d) => winding_rational(&n_sym, &(d * d), c)?,
    };
    Ok(report)
}

/// Weighted number `k + 2m` of zeros of a polynomial inside a contour
/// symmetric about the real axis: half the winding of `Phi o F`.
pub fn weighted_zero_count(f: &StemPolynomial, c: &Contour) -> Result<i64> {
    if !c.is_symmetric() {
        return Err(Error::AsymmetricContour);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n_sym = f.symmetrize();
    if n_sym.degree() == Some(0) {
        return Ok(0);
    }
    let roots = roots_with_multiplicity(&n_sym)?;
    let tol = BOUNDARY_GUARD * c.scale();
    if let Some((z, _)) = roots.iter().find(|(z, _)| c.distance(*z) <= tol) {
        return Err(Error::RootOnContour(*z));
    }
    let w = winding_log_derivative(&n_sym, c)?;
    debug_assert!(w % 2 == 0);
    Ok(w / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q_sq_plus_one() -> StemPolynomial {
        StemPolynomial::new(vec![Quaternion::ONE, Quaternion::ZERO, Quaternion::ONE])
    }

    fn product_ij() -> StemPolynomial {
        StemPolynomial::linear(Quaternion::I).star_product(&StemPolynomial::linear(Quaternion::J))
    }

    #[test]
    fn classification_fixtures() {
        let disc = Contour::disc(2.0).unwrap();
        let z = find_zeros(&q_sq_plus_one(), &disc).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!((z[0].kind, z[0].order, z[0].unit), (ZeroKind::Spherical, 1, None));
        assert!((z[0].stem_point - c(0.0, 1.0)).norm() < 1e-12);

        let z = find_zeros(&product_ij(), &disc).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!((z[0].kind, z[0].order), (ZeroKind::Isolated, 2));
        assert!(z[0].unit.unwrap().distance(ImaginaryUnit::I) < 1e-10);

        let z = find_zeros(&StemPolynomial::linear(Quaternion::I), &disc).unwrap();
        assert_eq!((z[0].kind, z[0].order), (ZeroKind::Isolated, 1));
        assert!(z[0].unit.unwrap().distance(ImaginaryUnit::I) < 1e-10);

        let z = find_zeros(&StemPolynomial::monomial(1), &Contour::disc(1.0).unwrap()).unwrap();
        assert_eq!((z[0].kind, z[0].order), (ZeroKind::Real, 1));
    }

    #[test]
    fn weighted_counts() {
        let disc = Contour::disc(2.0).unwrap();
        assert_eq!(weighted_zero_count(&q_sq_plus_one(), &disc), Ok(2));
        assert_eq!(weighted_zero_count(&product_ij(), &disc), Ok(2));
        assert_eq!(weighted_zero_count(&StemPolynomial::monomial(1), &Contour::disc(1.0).unwrap()), Ok(1));
        let shifted = Contour::circle(c(0.0, 0.5), 2.0).unwrap();
        assert_eq!(weighted_zero_count(&q_sq_plus_one(), &shifted), Err(Error::AsymmetricContour));
        assert!(matches!(
            weighted_zero_count(&q_sq_plus_one(), &Contour::disc(1.0).unwrap()),
            Err(Error::RootOnContour(_))
        ));
    }

    #[test]
    fn sphere_orders() {
        let f = q_sq_plus_one();
        assert_eq!(sphere_order(&f, Quaternion::I), Ok(2));
        assert_eq!(sphere_order(&StemPolynomial::monomial(1), Quaternion::ZERO), Ok(1));
        // (q^2 + 1)^{-1} (q^2 + q(i - j) - k)
        let g = StemPolynomial::new(vec![-Quaternion::K, Quaternion::I - Quaternion::J, Quaternion::ONE]);
        let h = StemRational::new(g, ComplexPoly::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert_eq!(sphere_order(&h, Quaternion::I), Ok(0));
    }

    #[test]
    fn counts_in_regions() {
        let f = q_sq_plus_one();
        let rect = Contour::rectangle(c(-2.0, -0.5), c(2.0, 2.0)).unwrap();
        let r = count_in_region(&f, &rect).unwrap();
        assert_eq!((r.m1, r.winding), (1, 2));
        assert!(r.is_consistent());
        let r = count_in_region(&f, &Contour::disc(2.0).unwrap()).unwrap();
        assert_eq!((r.m0, r.winding), (1, 4));
        let rect = Contour::rectangle(c(-1.0, -1.0), c(1.0, 1.0)).unwrap();
        let r = count_in_region(&StemPolynomial::monomial(1), &rect).unwrap();
        assert_eq!((r.r, r.winding), (1, 2));
    }

    #[test]
    fn non_extending_quotient_has_pole_and_isolated_zero() {
        let g = StemPolynomial::new(vec![-Quaternion::K, Quaternion::I - Quaternion::J, Quaternion::ONE]);
        let h = StemRational::new(g, ComplexPoly::new(vec![1.0, 0.0, 1.0])).unwrap();
        let z = find_zeros(&h, &Contour::disc(2.0).unwrap()).unwrap();
        let kinds: Vec<_> = z.iter().map(|r| (r.kind, r.order)).collect();
        assert!(kinds.contains(&(ZeroKind::Pole, 2)));
        assert!(kinds.contains(&(ZeroKind::Isolated, 2)));
        let report = count_in_region(&h, &Contour::disc(2.0).unwrap()).unwrap();
        assert_eq!(report.winding, 0);
        assert!(report.is_consistent());
    }

    #[test]
    fn star_inverse_poles_match_zeros() {
        let f = product_ij();
        let inv = f.star_inverse().unwrap();
        let disc = Contour::disc(2.0).unwrap();
        let r = count_in_region(&inv, &disc).unwrap();
        assert_eq!(r.winding, -4);
        assert!(r.is_consistent());
        assert_eq!(sphere_order(&inv, Quaternion::I), Ok(-2));
    }
}
