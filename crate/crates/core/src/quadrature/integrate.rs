//! Integrals of `z^s R(z) e^{-z}` over `[0, ∞)`.
//!
//! The interval `[0, R]` is split into equal panels, each integrated with
//! Gauss–Legendre. On the first panel the substitution `z = h u^b`, where
//! `s = a/b`, turns `z^s dz` into a polynomial factor in `u`, so a
//! fractional power at the origin costs nothing. The remainder `[R, ∞)` is
//! not integrated but bounded analytically.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::gauss::GaussLegendre;
use crate::error::{Error, Result};
use crate::exactnum::rat::to_f64;
use crate::exactnum::{sturm_nonneg_root_count, QuasiRational, Rat, RatFunc};

const MAX_RADIUS: f64 = 4000.0;
const MAX_PANEL_DOUBLINGS: usize = 4;
const FIRST_PANEL_PIECES: usize = 4;

/// Truncation and discretization settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Truncation radius `R`.
    pub radius: f64,
    /// Panels on `[0, R]`.
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Required bound on the total error, relative to `max(1, ∫|f|)`.
    pub tol: f64,
    /// Enlarge `R` (keeping the panel width) until the tail bound fits.
    pub grow_radius: bool,
}

impl QuadConfig {
    /// `R = max(50, 4 n_max)`, 64 panels of 16 nodes, tolerance `1e-10`.
    pub fn default_for(n_max: usize) -> Self {
        QuadConfig {
            radius: (4 * n_max).max(50) as f64,
            panels: 64,
            nodes_per_panel: 16,
            tol: 1e-10,
            grow_radius: true,
        }
    }

    /// Same radius with twice as many panels.
    pub fn doubled(&self) -> Self {
        QuadConfig { panels: 2 * self.panels, ..self.clone() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius.is_finite()) || self.panels == 0 || self.nodes_per_panel == 0 {
            return Err(Error::InvalidParams(format!("bad quadrature config {self:?}")));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParams("quadrature tolerance must be positive".into()));
        }
        Ok(())
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig::default_for(0)
    }
}

/// A value together with a bound on its error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    /// Discretization difference plus tail bound plus a rounding floor.
    pub error: f64,
    /// `∫_0^R |f|`, the scale the tolerance is measured against.
    pub abs_value: f64,
    pub tail_bound: f64,
    /// The radius and panel count actually used.
    pub radius: f64,
    pub panels: usize,
}

/// `z^shift * num(z)/den(z) * e^{-z}` with `den` free of zeros on `[0, ∞)`.
#[derive(Clone, Debug)]
pub struct ExpIntegrand {
    shift: Rat,
    shift_f: f64,
    num: Vec<f64>,
    den: Vec<f64>,
}

impl ExpIntegrand {
    pub fn new(q: &QuasiRational) -> Result<Self> {
        let body = q.body();
        if sturm_nonneg_root_count(body.den()) != 0 {
            return Err(Error::WeightNotRegular("integrand has a pole on [0, inf)".into()));
        }
        if !q.is_zero() && q.shift() <= &-Rat::from_integer(1.into()) {
            return Err(Error::WeightNotRegular(format!("z^{} is not integrable at 0", q.shift())));
        }
        Ok(ExpIntegrand {
            shift: q.shift().clone(),
            shift_f: to_f64(q.shift()),
            num: body.num().to_f64_coeffs(),
            den: body.den().to_f64_coeffs(),
        })
    }

    pub fn from_ratfunc(r: &RatFunc) -> Result<Self> {
        ExpIntegrand::new(&QuasiRational::from_ratfunc(r.clone()))
    }

    fn body(&self, z: f64) -> f64 {
        horner(&self.num, z) / horner(&self.den, z)
    }

    /// The integrand at `z > 0`.
    pub fn eval(&self, z: f64) -> f64 {
        if self.num.is_empty() {
            return 0.0;
        }
        (self.shift_f * z.ln() - z).exp() * self.body(z)
    }

    /// Value and absolute value on `[0, R]` with `panels` panels.
    pub(crate) fn composite(&self, radius: f64, panels: usize, rule: &GaussLegendre) -> (f64, f64) {
        if self.num.is_empty() {
            return (0.0, 0.0);
        }
        let h = radius / panels as f64;
        let (mut value, mut abs) = self.first_panel(h, rule);
        for i in 1..panels {
            let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
            let mut s = 0.0;
            let mut sa = 0.0;
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let f = self.eval(mid + half * x);
                s += w * f;
                sa += w * f.abs();
            }
            value += s * half;
            abs += sa * half;
        }
        (value, abs)
    }

    /// `∫_0^h` via `z = h u^b`: `z^s dz = b h^{s+1} u^{a+b-1} du`.
    fn first_panel(&self, h: f64, rule: &GaussLegendre) -> (f64, f64) {
        let a = self.shift.numer().to_i64().expect("shift numerator fits in i64");
        let b = self.shift.denom().to_i64().expect("shift denominator fits in i64");
        let power = (a + b - 1) as i32;
        let prefactor = b as f64 * ((self.shift_f + 1.0) * h.ln()).exp();
        let mut value = 0.0;
        let mut abs = 0.0;
        let width = 1.0 / FIRST_PANEL_PIECES as f64;
        for piece in 0..FIRST_PANEL_PIECES {
            let (lo, hi) = (piece as f64 * width, (piece + 1) as f64 * width);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (lo + hi);
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let u: f64 = mid + half * x;
                let z = h * u.powi(b as i32);
                let f = prefactor * u.powi(power) * self.body(z) * (-z).exp();
                value += w * f * half;
                abs += w * f.abs() * half;
            }
        }
        (value, abs)
    }

    /// Rigorous bound on `∫_R^∞ |f|`, or `None` if the denominator bound
    /// does not yet hold at `R`.
    ///
    /// For `z >= R >= 1`: `|num| <= N z^d` and `|den| >= D z^e`, so the
    /// integrand is at most `(N/D) z^t e^{-z}` with `t = s + d - e`, and
    /// `∫_R^∞ z^t e^{-z} <= R^t e^{-R} / (1 - t/R)` when `0 < t < R`.
    pub fn tail_bound(&self, radius: f64) -> Option<f64> {
        if self.num.is_empty() {
            return Some(0.0);
        }
        if radius < 1.0 {
            return None;
        }
        let d = self.num.len() - 1;
        let e = self.den.len() - 1;
        let n_bound: f64 = self.num.iter().enumerate().map(|(j, c)| c.abs() * radius.powi(j as i32 - d as i32)).sum();
        let d_bound = self.den[e].abs()
            - self.den[..e].iter().enumerate().map(|(j, c)| c.abs() * radius.powi(j as i32 - e as i32)).sum::<f64>();
        if d_bound <= 0.0 {
            return None;
        }
        let t = self.shift_f + d as f64 - e as f64;
        let factor = if t <= 0.0 {
            1.0
        } else if t < radius {
            1.0 / (1.0 - t / radius)
        } else {
            return None;
        };
        Some(n_bound / d_bound * (t * radius.ln() - radius).exp() * factor)
    }
}

pub(crate) fn horner(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * z + a)
}

/// `∫_0^∞ f` with a combined error bound.
///
/// The reported value uses `2P` panels; the discretization part of the
/// error is `|Q_P - Q_{2P}|`. Panels are doubled (up to four times) until
/// that fits the tolerance.
pub fn integrate(f: &ExpIntegrand, cfg: &QuadConfig) -> Result<Estimate> {
    cfg.validate()?;
    let rule = GaussLegendre::new(cfg.nodes_per_panel);
    let width = cfg.radius / cfg.panels as f64;
    let mut radius = cfg.radius;
    let tail = loop {
        match f.tail_bound(radius) {
            Some(t) if t <= cfg.tol => break t,
            Some(t) if !cfg.grow_radius || radius * 1.5 > MAX_RADIUS => {
                // the tolerance is relative; compare against the scale first
                let (_, abs) = f.composite(radius, panels_for(radius, width), &rule);
                if t <= cfg.tol * abs.max(1.0) {
                    break t;
                }
                return Err(Error::TailBoundExceeded { bound: t, tol: cfg.tol, radius });
            }
            None if !cfg.grow_radius || radius * 1.5 > MAX_RADIUS => {
                return Err(Error::TailBoundExceeded { bound: f64::INFINITY, tol: cfg.tol, radius });
            }
            _ => radius *= 1.5,
        }
    };
    let mut panels = panels_for(radius, width);
    let mut doublings = 0;
    loop {
        let (coarse, _) = f.composite(radius, panels, &rule);
        let (fine, abs) = f.composite(radius, 2 * panels, &rule);
        let scale = abs.max(1.0);
        let error = (coarse - fine).abs() + tail + 64.0 * f64::EPSILON * abs;
        if error <= cfg.tol * scale {
            return Ok(Estimate { value: fine, error, abs_value: abs, tail_bound: tail, radius, panels: 2 * panels });
        }
        if doublings == MAX_PANEL_DOUBLINGS {
            return Err(Error::NonConvergence { iterations: doublings });
        }
        panels *= 2;
        doublings += 1;
    }
}

fn panels_for(radius: f64, width: f64) -> usize {
    (radius / width).round().max(1.0) as usize
}
