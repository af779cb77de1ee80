//! Schrödinger form of the chain: `ζ(x) = x²/4`, gauge factors, potentials,
//! eigenfunctions and a finite-difference check of isospectrality.

pub mod fd;
pub mod gauge;

use serde::{Deserialize, Serialize};

pub use fd::{fd_spectrum, refine, Grid, Refinement, Spectrum, MAX_LEVELS};
pub use gauge::{
    build_potentials, eigenfunction_samples, potential, sample_potential, zeta, Gauge, GaugeData, PotentialRecord,
};

use crate::error::Result;
use crate::xcore::{ParamsRecord, XLParams};

/// `max(20, 2 sqrt(4 (count + ell)))`.
pub fn default_length(count: usize, ell: usize) -> f64 {
    (2.0 * (4.0 * (count + ell) as f64).sqrt()).max(20.0)
}

/// Spectra of `U0` and `U2` on two grids, `h` and `h/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsospectralReport {
    pub params: ParamsRecord,
    pub u0: [Spectrum; 2],
    pub u2: [Spectrum; 2],
    /// Per-level `|E2 - E0|` on each grid.
    pub discrepancy: [Vec<f64>; 2],
    /// `max disc(h/2) / max disc(h)`.
    pub refinement_ratio: f64,
    /// Successive differences of the `U2` levels on the finer grid.
    pub spacing: Vec<f64>,
    /// `E2_0 - E0_0` on the finer grid: the additive constant between the
    /// two ladders.
    pub ground_offset: f64,
}

pub fn isospectral_study(params: &XLParams, h: f64, count: usize) -> Result<IsospectralReport> {
    let data = build_potentials(params)?;
    let grid = Grid::with_step(default_length(count, params.ell()), h);
    let fine = grid.refined();
    let u0 = [fd_spectrum(&data.u0, &grid, count)?, fd_spectrum(&data.u0, &fine, count)?];
    let u2 = [fd_spectrum(&data.u2, &grid, count)?, fd_spectrum(&data.u2, &fine, count)?];
    let disc = |i: usize| -> Vec<f64> {
        u0[i].eigenvalues.iter().zip(&u2[i].eigenvalues).map(|(a, b)| (a - b).abs()).collect()
    };
    let discrepancy = [disc(0), disc(1)];
    let max = |v: &[f64]| v.iter().cloned().fold(0.0, f64::max);
    let refinement_ratio = max(&discrepancy[1]) / max(&discrepancy[0]);
    let spacing = u2[1].eigenvalues.windows(2).map(|w| w[1] - w[0]).collect();
    let ground_offset = u2[1].eigenvalues[0] - u0[1].eigenvalues[0];
    Ok(IsospectralReport { params: params.record(), u0, u2, discrepancy, refinement_ratio, spacing, ground_offset })
}
