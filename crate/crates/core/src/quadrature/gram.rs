//! Inner products, Gram matrices and the adjoint boundary identity.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use super::gauss::GaussLegendre;
use super::integrate::{integrate, Estimate, ExpIntegrand, QuadConfig};
use crate::error::{Error, Result};
use crate::exactnum::rat::{factorial, format_rat, rat_int, to_f64};
use crate::exactnum::{Poly, QuasiRational, Rat, RatFunc};
use crate::factorization::FactorizationStep;
use crate::xcore::{certify_weight_regular, ParamsRecord, XLParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// `z^k e^{-z}`
    Classical,
    /// `z^k eta12^{-2} e^{-z}`
    Exceptional,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    k: Rat,
    kind: WeightKind,
    eta12: Option<Poly>,
}

impl Weight {
    pub fn classical(k: Rat) -> Result<Self> {
        if k <= -Rat::one() {
            return Err(Error::WeightNotRegular(format!("classical weight needs k > -1, got {}", format_rat(&k))));
        }
        Ok(Weight { k, kind: WeightKind::Classical, eta12: None })
    }

    /// Requires the Sturm certificate for `eta12`.
    pub fn exceptional(params: &XLParams) -> Result<Self> {
        let cert = certify_weight_regular(params)?;
        Ok(Weight { k: params.k().clone(), kind: WeightKind::Exceptional, eta12: Some(cert.eta12) })
    }

    pub fn k(&self) -> &Rat {
        &self.k
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// The weight without its `e^{-z}` factor.
    pub fn density(&self) -> QuasiRational {
        let body = match &self.eta12 {
            Some(e) => RatFunc::new(Poly::one(), e * e),
            None => RatFunc::one(),
        };
        QuasiRational::new(self.k.clone(), body)
    }

    pub fn eval(&self, z: f64) -> f64 {
        ExpIntegrand::new(&self.density()).map(|f| f.eval(z)).unwrap_or(f64::NAN)
    }
}

/// `∫_0^∞ f g W dz`.
pub fn inner(f: &Poly, g: &Poly, w: &Weight, cfg: &QuadConfig) -> Result<Estimate> {
    let integrand = &QuasiRational::from_poly(f * g) * &w.density();
    integrate(&ExpIntegrand::new(&integrand)?, cfg)
}

type Matrix = Vec<Vec<f64>>;

/// Gram matrix of arbitrary polynomials and per-entry error estimates,
/// entries computed in parallel.
pub fn gram_of(polys: &[Poly], w: &Weight, cfg: &QuadConfig) -> Result<(Matrix, Matrix)> {
    let n = polys.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let entries: Vec<Estimate> =
        pairs.par_iter().map(|&(i, j)| inner(&polys[i], &polys[j], w, cfg)).collect::<Result<_>>()?;
    let mut values = vec![vec![0.0; n]; n];
    let mut errors = vec![vec![0.0; n]; n];
    for (&(i, j), e) in pairs.iter().zip(entries) {
        values[i][j] = e.value;
        values[j][i] = e.value;
        errors[i][j] = e.error;
        errors[j][i] = e.error;
    }
    Ok((values, errors))
}

/// `C Γ(k+n+3-ell) / ((m1-m2)(n-ell)!)`, with Γ in log form.
pub fn expected_norm(params: &XLParams, n: usize) -> Result<f64> {
    let c = params.norm_constant_c(n)?;
    let ell = params.ell();
    let rational = c / (rat_int(params.m1() as i64 - params.m2() as i64) * factorial(n - ell));
    let arg = to_f64(params.k()) + (n + 3) as f64 - ell as f64;
    let sign = if rational.is_negative() { -1.0 } else { 1.0 };
    Ok(sign * (to_f64(&rational.abs()).ln() + ln_gamma(arg)).exp())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramDiagnosis {
    /// `max |G_ij| / sqrt(G_ii G_jj)` over `i != j`.
    pub max_offdiag_ratio: f64,
    /// `max |G_ii - expected_i| / |expected_i|`.
    pub max_diag_rel_error: f64,
    /// Largest error estimate relative to `sqrt(G_ii G_jj)`.
    pub max_rel_error_estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub params: ParamsRecord,
    pub degrees: Vec<usize>,
    pub matrix: Vec<Vec<f64>>,
    pub errors: Vec<Vec<f64>>,
    pub expected_diagonal: Vec<f64>,
    pub diagnosis: GramDiagnosis,
}

impl GramReport {
    pub fn entry(&self, n: usize, j: usize) -> Option<f64> {
        let first = *self.degrees.first()?;
        self.matrix.get(n.checked_sub(first)?)?.get(j.checked_sub(first)?).copied()
    }
}

/// Off-diagonal and diagonal diagnostics of a Gram matrix.
pub fn diagnose(matrix: &[Vec<f64>], errors: &[Vec<f64>], expected: &[f64]) -> GramDiagnosis {
    let n = matrix.len();
    let mut d = GramDiagnosis { max_offdiag_ratio: 0.0, max_diag_rel_error: 0.0, max_rel_error_estimate: 0.0 };
    for i in 0..n {
        for j in 0..n {
            let scale = (matrix[i][i] * matrix[j][j]).abs().sqrt();
            d.max_rel_error_estimate = d.max_rel_error_estimate.max(errors[i][j] / scale);
            if i != j {
                d.max_offdiag_ratio = d.max_offdiag_ratio.max(matrix[i][j].abs() / scale);
            }
        }
        if let Some(e) = expected.get(i) {
            d.max_diag_rel_error = d.max_diag_rel_error.max((matrix[i][i] - e).abs() / e.abs());
        }
    }
    d
}

/// Gram matrix of `hat L_ell, ..., hat L_{n_max}` under the exceptional weight.
pub fn gram_matrix(params: &XLParams, n_max: usize, cfg: &QuadConfig) -> Result<GramReport> {
    let w = Weight::exceptional(params)?;
    let ell = params.ell();
    if n_max < ell {
        return Err(Error::InvalidParams(format!("n_max = {n_max} is below ell = {ell}")));
    }
    let degrees: Vec<usize> = (ell..=n_max).collect();
    let polys: Vec<Poly> = degrees.iter().map(|&n| params.xlaguerre(n)).collect::<Result<_>>()?;
    let (matrix, errors) = gram_of(&polys, &w, cfg)?;
    let expected_diagonal: Vec<f64> = degrees.iter().map(|&n| expected_norm(params, n)).collect::<Result<_>>()?;
    let diagnosis = diagnose(&matrix, &errors, &expected_diagonal);
    Ok(GramReport { params: params.record(), degrees, matrix, errors, expected_diagonal, diagnosis })
}

/// The weights `W0 = z^{k+2}`, `W1 = z^{k+1}/eta1^2`, `W2 = z^k/eta12^2` of
/// the chain operators, without the common `e^{-z}`.
pub fn chain_weights(params: &XLParams) -> [QuasiRational; 3] {
    let k = params.k();
    let e1 = params.eta1();
    let e12 = params.eta12();
    [
        QuasiRational::new(k + rat_int(2), RatFunc::one()),
        QuasiRational::new(k + Rat::one(), RatFunc::new(Poly::one(), &e1 * &e1)),
        QuasiRational::new(k.clone(), RatFunc::new(Poly::one(), &e12 * &e12)),
    ]
}

/// The weight of the partner operator: `(b̂/b) W`.
pub fn partner_weight(step: &FactorizationStep, w: &QuasiRational) -> QuasiRational {
    w.mul_ratfunc(&(&step.b.beta / &step.a.beta))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjointResidual {
    /// `∫_0^R A[f] g Ŵ`
    pub a_term: f64,
    /// `∫_0^R B[g] f W`
    pub b_term: f64,
    /// `[b̂ W f g e^{-z}]_0^R`
    pub boundary: f64,
    pub residual: f64,
    /// `residual` divided by `max(1, ∫|A[f] g Ŵ| + ∫|B[g] f W| + |boundary|)`.
    pub relative: f64,
}

/// `∫_0^R A[f] g Ŵ + ∫_0^R B[g] f W - [b̂ W f g]_0^R` for one step with
/// operator weight `w` (times `e^{-z}`).
pub fn adjoint_boundary_check(
    f: &Poly,
    g: &Poly,
    step: &FactorizationStep,
    w: &QuasiRational,
    radius: f64,
    cfg: &QuadConfig,
) -> Result<AdjointResidual> {
    let w_hat = partner_weight(step, w);
    let fq = QuasiRational::from_poly(f.clone());
    let gq = QuasiRational::from_poly(g.clone());
    let a_integrand = &(&step.a.apply(&fq) * &gq) * &w_hat;
    let b_integrand = &(&step.b.apply(&gq) * &fq) * w;
    let (a_term, a_abs) = integrate_finite(&ExpIntegrand::new(&a_integrand)?, radius, cfg);
    let (b_term, b_abs) = integrate_finite(&ExpIntegrand::new(&b_integrand)?, radius, cfg);
    let boundary_q = (&(&fq * &gq) * w).mul_ratfunc(&step.b.beta);
    let boundary = ExpIntegrand::new(&boundary_q)?.eval(radius) - value_at_zero(&boundary_q)?;
    let residual = (a_term + b_term - boundary).abs();
    let scale = (a_abs + b_abs + boundary.abs()).max(1.0);
    Ok(AdjointResidual { a_term, b_term, boundary, residual, relative: residual / scale })
}

fn value_at_zero(q: &QuasiRational) -> Result<f64> {
    if q.is_zero() || q.shift().is_positive() {
        return Ok(0.0);
    }
    if q.shift().is_zero() {
        return q.body().eval(&Rat::zero()).map(|v| to_f64(&v)).ok_or(Error::PoleOnAxis);
    }
    Err(Error::PoleOnAxis)
}

/// `∫_0^R` with the panel layout of `cfg`; returns value and `∫|.|`.
fn integrate_finite(f: &ExpIntegrand, radius: f64, cfg: &QuadConfig) -> (f64, f64) {
    let rule = GaussLegendre::new(cfg.nodes_per_panel);
    f.composite(radius, 2 * cfg.panels, &rule)
}
