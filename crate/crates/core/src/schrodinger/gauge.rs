//! The physical gauge `ψ = (μ φ)∘ζ` with `ζ(x) = x²/4`, and the potentials
//! of the classical and the exceptional Schrödinger operators.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rat::{rat, rat_int, to_f64};
use crate::exactnum::{sturm_nonneg_root_count, Poly, Rat, RatFunc};
use crate::factorization::{FactorizationChain, SecondOrderOp};
use crate::quadrature::integrate::horner;
use crate::xcore::XLParams;

/// `x²/4` as a polynomial in `x`.
pub fn zeta() -> Poly {
    Poly::monomial(rat(1, 4), 2)
}

/// `μ = e^{rate z} z^{power} F(z)` for a rational `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    pub rate: Rat,
    pub power: Rat,
    /// `F'/F`
    pub log_derivative: RatFunc,
    pub factor: RatFunc,
}

impl Gauge {
    /// Splits `μ'/μ = (2q - p')/(4p)` into `rate + power/z + F'/F` and checks
    /// that the remainder is the log-derivative of the supplied `factor`.
    pub fn from_operator(op: &SecondOrderOp, factor: RatFunc) -> Result<Self> {
        let rho = &(&op.q.scale(&rat_int(2)) - &op.p.derivative()) / &op.p.scale(&rat_int(4));
        let (dn, dd) = (rho.num().degree().unwrap_or(0), rho.den().degree().unwrap_or(0));
        let rate = match dn.cmp(&dd) {
            std::cmp::Ordering::Less => Rat::zero(),
            std::cmp::Ordering::Equal => rho.num().leading() / rho.den().leading(),
            std::cmp::Ordering::Greater => {
                return Err(Error::InvalidParams("gauge log-derivative grows at infinity".into()));
            }
        };
        let power = match rho.den().valuation() {
            0 => Rat::zero(),
            1 => rho.num().coeff(0) / rho.den().coeff(1),
            _ => return Err(Error::InvalidParams("gauge log-derivative has a higher-order pole at 0".into())),
        };
        let log_derivative =
            &(&rho - &RatFunc::constant(rate.clone())) - &RatFunc::new(Poly::constant(power.clone()), Poly::z());
        if log_derivative != factor.log_derivative() {
            return Err(Error::IdentityFailure { identity: "gauge factor log-derivative".into(), residual: None });
        }
        Ok(Gauge { rate, power, log_derivative, factor })
    }

    /// `μ'/μ` as a rational function of `z`.
    pub fn log_derivative_full(&self) -> RatFunc {
        &(&RatFunc::constant(self.rate.clone()) + &RatFunc::new(Poly::constant(self.power.clone()), Poly::z()))
            + &self.log_derivative
    }

    pub fn eval(&self, z: f64) -> f64 {
        let (num, den) = (self.factor.num().to_f64_coeffs(), self.factor.den().to_f64_coeffs());
        (to_f64(&self.rate) * z + to_f64(&self.power) * z.ln()).exp() * horner(&num, z) / horner(&den, z)
    }

    /// `(μ∘ζ)'/(μ∘ζ)` in `x`: `(μ'/μ)(ζ) ζ'`.
    pub fn x_log_derivative(&self) -> RatFunc {
        &self.log_derivative_full().compose(&zeta()) * &RatFunc::from_poly(Poly::monomial(rat(1, 2), 1))
    }
}

/// `U = -(r∘ζ) + d' + d²` with `d = (μ∘ζ)'/(μ∘ζ)`.
pub fn potential(op: &SecondOrderOp, gauge: &Gauge) -> RatFunc {
    let d = gauge.x_log_derivative();
    &(&d.derivative() + &(&d * &d)) - &op.r.compose(&zeta())
}

/// Gauges, potentials and the three independent constructions of `U2`.
#[derive(Clone, Debug)]
pub struct GaugeData {
    pub params: XLParams,
    pub mu0: Gauge,
    pub mu2: Gauge,
    pub u0: RatFunc,
    /// From `(r2, μ2)` directly.
    pub u2: RatFunc,
    /// `U0 - 2 ∂xx [log(eta12∘ζ) - (1+k) log ζ - ζ]`.
    pub u2_crum: RatFunc,
    /// `U0 - 2 ∂xx log W[ψ1, ψ2]` from the seed eigenfunctions.
    pub u2_wronskian: RatFunc,
}

impl GaugeData {
    /// `U2 - U0`.
    pub fn difference(&self) -> RatFunc {
        &self.u2 - &self.u0
    }

    /// `U2` from `(r2, μ2)` minus the Crum form, and minus the Wronskian form.
    pub fn crum_residuals(&self) -> (RatFunc, RatFunc) {
        (&self.u2 - &self.u2_crum, &self.u2 - &self.u2_wronskian)
    }
}

/// Fails with `PoleOnAxis` if the denominator of `u` vanishes on `x > 0`.
pub fn check_no_pole(u: &RatFunc) -> Result<()> {
    let den = u.den();
    if sturm_nonneg_root_count(&den.shift_down(den.valuation())) != 0 {
        return Err(Error::PoleOnAxis);
    }
    Ok(())
}

fn half_x() -> RatFunc {
    RatFunc::from_poly(Poly::monomial(rat(1, 2), 1))
}

/// `∂xx log W[ψ1, ψ2]` with `ψi = (μ0 φi)∘ζ` and `φi = z^{-k-2} eta_i`.
fn log_wronskian_xx(params: &XLParams, mu0: &Gauge) -> RatFunc {
    let d0 = mu0.x_log_derivative();
    let k2 = RatFunc::new(Poly::constant(-params.k() - rat_int(2)), Poly::z());
    let u = |a: u8| {
        let phi_log = &RatFunc::from_poly(params.eta(a)).log_derivative() + &k2;
        &d0 + &(&phi_log.compose(&zeta()) * &half_x())
    };
    let (u1, u2) = (u(1), u(2));
    let v = &u2 - &u1;
    &(&u1.derivative() + &u2.derivative()) + &v.log_derivative().derivative()
}

/// `∂xx [log(eta12∘ζ) - (1+k) log ζ - ζ]`.
fn crum_log_xx(params: &XLParams) -> RatFunc {
    let e = RatFunc::from_poly(params.eta12());
    let k1 = RatFunc::new(Poly::constant(-params.k() - Rat::one()), Poly::z());
    let dz = &(&e.log_derivative() + &k1) - &RatFunc::one();
    (&dz.compose(&zeta()) * &half_x()).derivative()
}

/// Builds `U0`, `U2` and the cross-checks. Requires a regular weight.
pub fn build_potentials(params: &XLParams) -> Result<GaugeData> {
    if !params.weight_regular() {
        return Err(Error::WeightNotRegular(format!("k must exceed m2 - 2 = {}", params.m2() as i64 - 2)));
    }
    let chain = FactorizationChain::build(params)?;
    let mu0 = Gauge::from_operator(chain.t0(), RatFunc::one())?;
    let eta12 = params.eta12();
    let mu2 = Gauge::from_operator(chain.t2(), RatFunc::new(Poly::one(), eta12))?;
    let u0 = potential(chain.t0(), &mu0);
    let u2 = potential(chain.t2(), &mu2);
    check_no_pole(&u2)?;
    let two = RatFunc::constant(rat_int(2));
    let u2_crum = &u0 - &(&two * &crum_log_xx(params));
    let u2_wronskian = &u0 - &(&two * &log_wronskian_xx(params, &mu0));
    Ok(GaugeData { params: params.clone(), mu0, mu2, u0, u2, u2_crum, u2_wronskian })
}

/// `ψn(x) = μ2(ζ) hat L_n(ζ)` on the given points.
pub fn eigenfunction_samples(n: usize, params: &XLParams, grid: &[f64]) -> Result<Vec<f64>> {
    if n < params.ell() {
        return Err(Error::InvalidParams(format!("n = {n} is below ell = {}", params.ell())));
    }
    let data = build_potentials(params)?;
    let y = params.xlaguerre(n)?.to_f64_coeffs();
    Ok(grid
        .iter()
        .map(|&x| {
            let z = x * x / 4.0;
            data.mu2.eval(z) * horner(&y, z)
        })
        .collect())
}

/// Samples of a rational function of `x`.
pub fn sample_potential(u: &RatFunc, grid: &[f64]) -> Vec<f64> {
    let (num, den) = (u.num().to_f64_coeffs(), u.den().to_f64_coeffs());
    grid.iter().map(|&x| horner(&num, x) / horner(&den, x)).collect()
}

/// Serializable summary of a potential.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PotentialRecord {
    pub num: Poly,
    pub den: Poly,
}

impl From<&RatFunc> for PotentialRecord {
    fn from(u: &RatFunc) -> Self {
        PotentialRecord { num: u.num().clone(), den: u.den().clone() }
    }
}
