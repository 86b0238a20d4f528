//! Roots of real-coefficient polynomials with their multiplicities.
//!
//! Raw roots come from Aberth-Ehrlich iteration. Multiple roots split into
//! clusters of size `~eps^(1/mu)`, so raw roots are grouped by single
//! linkage and the multiplicity of each group is read off the argument
//! principle on a circle that separates it from every other group. The
//! grouping threshold starts small and grows until the multiplicities sum to
//! the degree.

use num_complex::Complex64;

use super::contour::{winding_unguarded, Contour};
use crate::error::{Error, Result};
use crate::stem::ComplexPoly;

const ABERTH_MAX_ITER: usize = 600;
const FIRST_CLUSTER_TOL: f64 = 1e-6;
const LAST_CLUSTER_TOL: f64 = 0.3;
/// Radius of the multiplicity circle as a fraction of the gap to the
/// nearest other cluster.
const SEPARATION: f64 = 0.45;

/// All roots of `p` as `(root, multiplicity)`, conjugate-symmetric, sorted
/// by real part and then imaginary part.
pub fn roots_with_multiplicity(p: &ComplexPoly) -> Result<Vec<(Complex64, usize)>> {
    let degree = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    // exact roots at the origin
    let zeros_at_origin = p.coeffs().iter().take_while(|&&c| c == 0.0).count();
    let reduced = ComplexPoly::new(p.coeffs()[zeros_at_origin..].to_vec());
    let mut out = Vec::new();
    if zeros_at_origin > 0 {
        out.push((Complex64::new(0.0, 0.0), zeros_at_origin));
    }
    if degree > zeros_at_origin {
        out.extend(nonzero_roots(&reduced)?);
    }
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(out)
}

fn nonzero_roots(p: &ComplexPoly) -> Result<Vec<(Complex64, usize)>> {
    let degree = p.degree().unwrap_or(0);
    let raw = aberth(p);
    let scale = raw.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let mut tol = FIRST_CLUSTER_TOL;
    while tol <= LAST_CLUSTER_TOL {
        let clusters = cluster(&raw, tol * scale);
        if let Some(found) = resolve(p, &clusters, degree) {
            return Ok(symmetrize_pairs(found, tol * scale)
                .into_iter()
                .map(|(z, m)| (polish(p, z, m), m))
                .collect());
        }
        tol *= 4.0;
    }
    Err(Error::NonConvergence(raw.len()))
}

/// Aberth-Ehrlich simultaneous iteration.
fn aberth(p: &ComplexPoly) -> Vec<Complex64> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n].abs();
    // Fujiwara-style radius bound for the initial circle.
    let radius = (0..n)
        .map(|k| (c[k].abs() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, (k as f64 + 0.25) * std::f64::consts::TAU / n as f64 + 0.4))
        .collect();
    for _ in 0..ABERTH_MAX_ITER {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = p.eval_with_derivative(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 || !denom.is_finite() || !ratio.is_finite() {
                Complex64::new(0.0, 0.0)
            } else {
                ratio / denom
            };
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Single-linkage grouping; returns the member lists.
fn cluster(points: &[Complex64], tol: f64) -> Vec<Vec<Complex64>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut label, i);
        if index[r] == usize::MAX {
            index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[r]].push(points[i]);
    }
    groups
}

/// Multiplicity of each cluster by the argument principle; `None` when the
/// multiplicities do not account for every root.
fn resolve(p: &ComplexPoly, clusters: &[Vec<Complex64>], degree: usize) -> Option<Vec<(Complex64, usize)>> {
    let centers: Vec<Complex64> = clusters
        .iter()
        .map(|g| g.iter().sum::<Complex64>() / g.len() as f64)
        .collect();
    let scale = centers.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let mut out = Vec::with_capacity(centers.len());
    let mut total = 0;
    for (k, &c) in centers.iter().enumerate() {
        let gap = centers
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &o)| (o - c).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = (SEPARATION * gap).min(0.5 * scale);
        let spread = clusters[k].iter().map(|z| (z - c).norm()).fold(0.0, f64::max);
        if radius <= 2.0 * spread {
            return None;
        }
        let circle = Contour::circle(c, radius).ok()?;
        let m = winding_unguarded(p, &circle).ok()?;
        if m <= 0 {
            return None;
        }
        total += m as usize;
        out.push((c, m as usize));
    }
    (total == degree).then_some(out)
}

/// Make the root set exactly conjugate-symmetric: near-real clusters become
/// real, and each upper cluster is paired with its mirror.
fn symmetrize_pairs(found: Vec<(Complex64, usize)>, tol: f64) -> Vec<(Complex64, usize)> {
    let mut out = Vec::with_capacity(found.len());
    let (real, complex): (Vec<_>, Vec<_>) = found.into_iter().partition(|(z, _)| z.im.abs() <= tol);
    for (z, m) in real {
        out.push((Complex64::new(z.re, 0.0), m));
    }
    let (upper, mut lower): (Vec<_>, Vec<_>) = complex.into_iter().partition(|(z, _)| z.im > 0.0);
    for (z, m) in upper {
        let partner = lower
            .iter()
            .enumerate()
            .filter(|(_, (_, mm))| *mm == m)
            .min_by(|a, b| (a.1 .0 - z.conj()).norm().total_cmp(&(b.1 .0 - z.conj()).norm()))
            .map(|(i, _)| i);
        let w = match partner {
            Some(i) => {
                let (l, _) = lower.swap_remove(i);
                (z + l.conj()) * 0.5
            }
            None => z,
        };
        out.push((w, m));
        out.push((w.conj(), m));
    }
    out
}

/// Newton refinement on `p^(m-1)`, which has a simple root at a root of `p`
/// of multiplicity `m`.
fn polish(p: &ComplexPoly, z0: Complex64, m: usize) -> Complex64 {
    let q = p.nth_derivative(m - 1);
    let mut z = z0;
    let mut best = q.eval(z).norm();
    for _ in 0..8 {
        let (v, d) = q.eval_with_derivative(z);
        if d.norm() == 0.0 || v.norm() == 0.0 {
            break;
        }
        let next = z - v / d;
        let next = if z0.im == 0.0 { Complex64::new(next.re, 0.0) } else { next };
        let size = q.eval(next).norm();
        if !(size < best) {
            break;
        }
        best = size;
        z = next;
    }
    z
}
