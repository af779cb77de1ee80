//! All complex roots of a polynomial, Aberth–Ehrlich iteration in `f64`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::poly::{horner_complex, Poly};
use crate::error::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const MAX_ABERTH_ITERATIONS: usize = 200;

/// Relative backward error `|p(z)| / sum |a_j| |z|^j`.
pub fn backward_error(coeffs: &[f64], z: Complex64) -> f64 {
    let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.abs());
    if scale == 0.0 {
        return 0.0;
    }
    horner_complex(coeffs, z).norm() / scale
}

/// Every root with multiplicity, sorted by real part and then imaginary part.
///
/// Each root satisfies `backward_error <= tol`; otherwise
/// [`Error::NonConvergence`] is returned.
pub fn complex_roots(p: &Poly, tol: f64) -> Result<Vec<Complex64>> {
    let degree = p.degree().unwrap_or(0);
    assert!(degree >= 1, "complex_roots needs a nonconstant polynomial");

    // exact roots at the origin come off first
    let v = p.valuation();
    let mut roots = vec![Complex64::new(0.0, 0.0); v];
    let q = p.shift_down(v);
    if q.degree().unwrap_or(0) > 0 {
        let coeffs = q.to_f64_coeffs();
        roots.extend(aberth(&coeffs, tol)?);
    }
    let mut roots = conjugate_cleanup(roots);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    // geometric-mean radius, bounded by a Cauchy-type estimate
    let radius = (coeffs[0].abs() / lead).powf(1.0 / n as f64).max(1e-3);
    let cauchy = 1.0 + coeffs[..n].iter().map(|c| c.abs() / lead).fold(0.0, f64::max);
    let radius = radius.min(cauchy);
    (0..n).map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64 + 0.4)).collect()
}

fn aberth(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let deriv: Vec<f64> = coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    let mut z = initial_guesses(coeffs);
    let stop = tol.min(1e-14);

    for _ in 0..MAX_ABERTH_ITERATIONS {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let pz = horner_complex(coeffs, z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / horner_complex(&deriv, z[i]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(f64::MIN_POSITIVE));
            }
        }
        let converged = z.iter().all(|&r| backward_error(coeffs, r) <= f64::EPSILON * 4.0);
        if converged || worst <= stop {
            break;
        }
    }
    if z.iter().any(|r| !r.is_finite() || backward_error(coeffs, *r) > tol) {
        return Err(Error::NonConvergence { iterations: MAX_ABERTH_ITERATIONS });
    }
    Ok(z)
}

/// Real input coefficients give conjugate-symmetric roots; enforce that
/// exactly so the sort order is reproducible.
fn conjugate_cleanup(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    for r in roots.iter_mut() {
        if r.im.abs() <= 1e-10 * (1.0 + r.norm()) {
            r.im = 0.0;
        }
    }
    let upper: Vec<Complex64> = roots.iter().copied().filter(|r| r.im > 0.0).collect();
    let lower_count = roots.iter().filter(|r| r.im < 0.0).count();
    if upper.len() != lower_count {
        return roots;
    }
    let mut used = vec![false; upper.len()];
    for r in roots.iter_mut().filter(|r| r.im < 0.0) {
        let best = (0..upper.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (upper[a].conj() - *r).norm().total_cmp(&(upper[b].conj() - *r).norm()));
        if let Some(j) = best {
            used[j] = true;
            *r = upper[j].conj();
        }
    }
    roots
}
