//! Linear geometry of the zero variety `Z = {Phi = 0}`.
//!
//! For a unit `v = ai + bj + ck` the plane `Z_v` of stem values realizing a
//! zero on the slice `C_v` is the kernel of a 4x4 complex matrix `A_v`.
//! Its orthogonal complement, sent through the Pluecker embedding, lands on
//! a conic in `CP^5`, and the unit can be read back off the plane.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercomplex::{unit_from_zero_tol, ComplexQuad, ImaginaryUnit};

/// Singular values below this fraction of the largest are zero.
pub const RANK_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The matrix `A_v` whose kernel is `Z_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitMatrix {
    entries: Matrix4<Complex64>,
}

impl UnitMatrix {
    pub fn new(v: ImaginaryUnit) -> Self {
        let [a, b, cc] = v.components();
        let i = c(0.0, -1.0);
        let r = |x: f64| c(x, 0.0);
        #[rustfmt::skip]
        let entries = Matrix4::new(
            i,      r(a),   r(b),   r(cc),
            r(-a),  i,      r(cc),  r(-b),
            r(-b),  r(-cc), i,      r(a),
            r(-cc), r(b),   r(-a),  i,
        );
        UnitMatrix { entries }
    }

    pub fn entries(&self) -> &Matrix4<Complex64> {
        &self.entries
    }

    pub fn apply(&self, z: &ComplexQuad) -> ComplexQuad {
        let v = self.entries * nalgebra::Vector4::from(z.0);
        ComplexQuad([v[0], v[1], v[2], v[3]])
    }

    /// Singular values (descending) with the matching right singular vectors.
    fn right_singular(&self) -> Vec<(f64, ComplexQuad)> {
        let svd = self.entries.svd(false, true);
        let v_t = svd.v_t.expect("requested right singular vectors");
        let mut out: Vec<(f64, ComplexQuad)> = (0..4)
            .map(|k| {
                let row = v_t.row(k);
                (svd.singular_values[k], ComplexQuad(std::array::from_fn(|m| row[m].conj())))
            })
            .collect();
        out.sort_by(|p, q| q.0.total_cmp(&p.0));
        out
    }

    /// Numerical rank over C.
    pub fn rank(&self) -> usize {
        let sv = self.right_singular();
        let top = sv[0].0;
        sv.iter().filter(|(s, _)| *s > RANK_TOL * top).count()
    }

    /// Orthonormal basis of the kernel `Z_v`.
    pub fn kernel_basis(&self) -> (ComplexQuad, ComplexQuad) {
        let sv = self.right_singular();
        (sv[2].1, sv[3].1)
    }

    /// Orthonormal basis of `Z_v^perp`, the range of the conjugate transpose.
    pub fn perp_basis(&self) -> (ComplexQuad, ComplexQuad) {
        let sv = self.right_singular();
        (sv[0].1, sv[1].1)
    }
}

pub fn unit_matrix(v: ImaginaryUnit) -> UnitMatrix {
    UnitMatrix::new(v)
}

/// Two independent vectors spanning `Z_v`.
pub fn zv_basis(v: ImaginaryUnit) -> (ComplexQuad, ComplexQuad) {
    UnitMatrix::new(v).kernel_basis()
}

/// A point of `CP^5` given by the six 2x2 minors in the order
/// `(01, 02, 03, 12, 13, 23)`, scaled so the largest coordinate is `1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlueckerPoint(pub [Complex64; 6]);

const MINOR_INDEX: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl PlueckerPoint {
    /// Rescale homogeneous coordinates so the largest one equals `1`.
    pub fn normalized(raw: [Complex64; 6]) -> Result<Self> {
        let (k, top) = raw
            .iter()
            .enumerate()
            .map(|(k, w)| (k, w.norm()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if top == 0.0 {
            return Err(Error::DependentVectors);
        }
        let pivot = raw[k];
        Ok(PlueckerPoint(raw.map(|w| w / pivot)))
    }

    /// `w0 w5 - w1 w4 + w2 w3`.
    pub fn grassmann_residual(&self) -> Complex64 {
        let w = &self.0;
        w[0] * w[5] - w[1] * w[4] + w[2] * w[3]
    }

    /// Projective distance: the smallest `|self - lambda other|` after both
    /// are normalized, computed with the pivot of `self`.
    pub fn projective_distance(&self, other: &PlueckerPoint) -> f64 {
        let (k, _) = self
            .0
            .iter()
            .enumerate()
            .map(|(k, w)| (k, w.norm()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if other.0[k].norm() == 0.0 {
            return f64::INFINITY;
        }
        let lambda = self.0[k] / other.0[k];
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b * lambda).norm())
            .fold(0.0, f64::max)
    }

    /// The 2-plane represented by this point, as two spanning vectors.
    pub fn plane(&self) -> Result<(ComplexQuad, ComplexQuad)> {
        // contracting the bivector with e_a gives vectors of the plane
        let mut w = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (&(a, b), &x) in MINOR_INDEX.iter().zip(&self.0) {
            w[a][b] = x;
            w[b][a] = -x;
        }
        let rows: Vec<ComplexQuad> = w.iter().map(|r| ComplexQuad(*r)).collect();
        let first = *rows
            .iter()
            .max_by(|p, q| p.norm().total_cmp(&q.norm()))
            .expect("four rows");
        let unit_first = first.scale(c(1.0 / first.norm(), 0.0));
        let second = rows
            .iter()
            .map(|r| *r - unit_first.scale(hermitian(&unit_first, r)))
            .max_by(|p, q| p.norm().total_cmp(&q.norm()))
            .expect("four rows");
        if second.norm() <= 1e-10 * first.norm() {
            return Err(Error::DependentVectors);
        }
        Ok((first, second))
    }
}

/// `sum conj(x_m) y_m`.
fn hermitian(x: &ComplexQuad, y: &ComplexQuad) -> Complex64 {
    (0..4).map(|m| x.0[m].conj() * y.0[m]).sum()
}

/// Pluecker coordinates of the plane spanned by `z1` and `z2`.
pub fn pluecker(z1: &ComplexQuad, z2: &ComplexQuad) -> Result<PlueckerPoint> {
    let raw = MINOR_INDEX.map(|(a, b)| z1.0[a] * z2.0[b] - z1.0[b] * z2.0[a]);
    let size = raw.iter().fold(0.0f64, |m, w| m.max(w.norm()));
    if size <= 1e-12 * z1.norm() * z2.norm() {
        return Err(Error::DependentVectors);
    }
    PlueckerPoint::normalized(raw)
}

/// True when `w` lies on the conic `w0 = w5, w1 = -w4, w2 = w3` inside the
/// Grassmannian quadric.
pub fn on_conic_s(w: &PlueckerPoint, tol: f64) -> bool {
    let w = PlueckerPoint::normalized(w.0).map(|p| p.0).unwrap_or(w.0);
    (w[0] - w[5]).norm() <= tol
        && (w[1] + w[4]).norm() <= tol
        && (w[2] - w[3]).norm() <= tol
        && (w[0] * w[5] - w[1] * w[4] + w[2] * w[3]).norm() <= tol
}

/// Pluecker point of `Z_v^perp`.
pub fn perp_pluecker(v: ImaginaryUnit) -> Result<PlueckerPoint> {
    let (z1, z2) = UnitMatrix::new(v).perp_basis();
    pluecker(&z1, &z2)
}

/// Recover `v` from the Pluecker point of `Z_v^perp`: rebuild the plane,
/// take its orthogonal complement `Z_v`, and solve `rho_v(z) = 0` on a
/// kernel vector.
pub fn unit_from_pluecker(w: &PlueckerPoint) -> Result<ImaginaryUnit> {
    let (p1, p2) = w.plane()?;
    // rows conj(p1), conj(p2), padded to a square matrix so the SVD returns
    // a full set of right singular vectors
    let m = Matrix4::from_fn(|r, col| match r {
        0 => p1.0[col].conj(),
        1 => p2.0[col].conj(),
        _ => Complex64::new(0.0, 0.0),
    });
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let z = order[..2]
        .iter()
        .map(|&k| ComplexQuad(std::array::from_fn(|col| v_t.row(k)[col].conj())))
        .max_by(|a, b| a.im().norm().total_cmp(&b.im().norm()))
        .expect("two kernel vectors");
    unit_from_zero_tol(&z, 1e-8)
}
