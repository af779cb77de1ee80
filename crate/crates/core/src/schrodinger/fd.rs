//! Three-point finite differences for `-ψ'' + U ψ` on `(0, L)` with
//! Dirichlet ends, and Sturm bisection on the resulting tridiagonal matrix.

use serde::{Deserialize, Serialize};

use super::gauge::{check_no_pole, sample_potential};
use crate::error::{Error, Result};
use crate::exactnum::RatFunc;

pub const MAX_LEVELS: usize = 10;

/// Interior points `x_i = i h`, `i = 1..=points`, with `h = x_max/(points+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(x_max: f64, points: usize) -> Self {
        Grid { x_min: x_max / (points + 1) as f64, x_max, points }
    }

    /// The grid on `(0, x_max)` with spacing as close to `h` as divides it.
    pub fn with_step(x_max: f64, h: f64) -> Self {
        let cells = (x_max / h).round().max(2.0) as usize;
        Grid::new(x_max, cells - 1)
    }

    pub fn step(&self) -> f64 {
        self.x_min
    }

    /// Half the spacing on the same interval.
    pub fn refined(&self) -> Self {
        Grid::new(self.x_max, 2 * self.points + 1)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (1..=self.points).map(|i| i as f64 * self.step()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub grid: Grid,
    pub h: f64,
    pub boundary: String,
    pub eigenvalues: Vec<f64>,
}

/// Number of eigenvalues below `lambda` of the symmetric tridiagonal matrix
/// with diagonal `diag` and constant off-diagonal `off`.
fn count_below(diag: &[f64], off: f64, lambda: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut d = f64::INFINITY;
    for &a in diag {
        // a zero pivot is nudged to a tiny positive value
        d = a - lambda - if d == 0.0 { off2 / f64::MIN_POSITIVE } else { off2 / d };
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `i`-th smallest eigenvalue by bisection on the Sturm count.
fn bisect(diag: &[f64], off: f64, i: usize, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) > i {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lowest `count` eigenvalues of the three-point discretization.
pub fn fd_spectrum(u: &RatFunc, grid: &Grid, count: usize) -> Result<Spectrum> {
    if count == 0 || count > MAX_LEVELS {
        return Err(Error::InvalidParams(format!("level count must be in 1..={MAX_LEVELS}, got {count}")));
    }
    if grid.points < count {
        return Err(Error::InvalidParams("grid has fewer points than requested levels".into()));
    }
    check_no_pole(u)?;
    let h = grid.step();
    let inv_h2 = 1.0 / (h * h);
    let diag: Vec<f64> = sample_potential(u, &grid.nodes()).into_iter().map(|v| v + 2.0 * inv_h2).collect();
    if diag.iter().any(|v| !v.is_finite()) {
        return Err(Error::PoleOnAxis);
    }
    let off = -inv_h2;
    // Gershgorin
    let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * inv_h2;
    let hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 2.0 * inv_h2;
    let eigenvalues: Vec<f64> = (0..count).map(|i| bisect(&diag, off, i, lo, hi)).collect();
    if eigenvalues.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NonConvergence { iterations: 200 });
    }
    Ok(Spectrum { grid: *grid, h, boundary: "dirichlet".into(), eigenvalues })
}

/// Spectra at `h`, `h/2`, `h/4` and the contraction of successive changes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub spectra: [Spectrum; 3],
    /// `max_i |E_i(h/2) - E_i(h/4)| / |E_i(h) - E_i(h/2)|`.
    pub contraction: f64,
    /// Richardson values `(4 E(h/4) - E(h/2)) / 3`.
    pub extrapolated: Vec<f64>,
}

/// Runs the refinement study; `NonConvergence` unless every level's change
/// shrinks by at least half from one refinement to the next.
pub fn refine(u: &RatFunc, grid: &Grid, count: usize) -> Result<Refinement> {
    let g1 = grid.refined();
    let g2 = g1.refined();
    let s0 = fd_spectrum(u, grid, count)?;
    let s1 = fd_spectrum(u, &g1, count)?;
    let s2 = fd_spectrum(u, &g2, count)?;
    let mut contraction: f64 = 0.0;
    for i in 0..count {
        let first = (s0.eigenvalues[i] - s1.eigenvalues[i]).abs();
        let second = (s1.eigenvalues[i] - s2.eigenvalues[i]).abs();
        contraction = contraction.max(if first == 0.0 { 0.0 } else { second / first });
    }
    if contraction > 0.5 {
        return Err(Error::NonConvergence { iterations: 2 });
    }
    let extrapolated = s1.eigenvalues.iter().zip(&s2.eigenvalues).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
    Ok(Refinement { spectra: [s0, s1, s2], contraction, extrapolated })
}
