//! Rational factorizations `T = B A + lambda` and the two-step chain
//! `T0 -> T1 -> T2` that starts at the classical Laguerre operator with
//! parameter `k + 2`.

use num_traits::One;

use super::operator::{FirstOrderOp, SecondOrderOp};
use crate::error::{Error, Result};
use crate::exactnum::rat::rat_int;
use crate::exactnum::{Poly, QuasiRational, Rat, RatFunc};
use crate::laguerre::classical_operator;
use crate::xcore::XLParams;

/// One Darboux step: `t = b∘a + lambda` and `t_partner = a∘b + lambda`.
#[derive(Clone, Debug)]
pub struct FactorizationStep {
    pub a: FirstOrderOp,
    pub b: FirstOrderOp,
    pub lambda: Rat,
    pub t: SecondOrderOp,
    pub t_partner: SecondOrderOp,
}

impl FactorizationStep {
    /// Builds the step from the operator, the gauge `b` and log-derivative
    /// `w` of the factorization function, and its eigenvalue.
    ///
    /// The companion operator has gauge `p/b` and log-derivative
    /// `-w - q/p + b'/b`; the partner has `q̂ = q + p' - 2 p b'/b` and
    /// `r̂ = -p (ŵ' + ŵ²) - q̂ ŵ + lambda`. Both factorization identities are
    /// checked on `1, z, z^2` before returning.
    pub fn new(t: SecondOrderOp, gauge: RatFunc, w: RatFunc, lambda: Rat) -> Result<Self> {
        let p = &t.p;
        let log_gauge = gauge.log_derivative();
        let b_gauge = p / &gauge;
        let b_w = &(&(-&w) - &(&t.q / p)) + &log_gauge;
        let q_hat = &(&t.q + &p.derivative()) - &(&(p * &log_gauge) * &RatFunc::constant(rat_int(2)));
        let r_hat =
            &(&(-p) * &(&b_w.derivative() + &(&b_w * &b_w))) - &(&(&q_hat * &b_w) - &RatFunc::constant(lambda.clone()));
        let step = FactorizationStep {
            a: FirstOrderOp::new(gauge, w),
            b: FirstOrderOp::new(b_gauge, b_w),
            t_partner: SecondOrderOp::new(p.clone(), q_hat, r_hat),
            t,
            lambda,
        };
        if !step.t.agrees_with(&step.factored()) {
            return Err(Error::IdentityFailure { identity: "T = B A + lambda".into(), residual: None });
        }
        if !step.t_partner.agrees_with(&step.refactored()) {
            return Err(Error::IdentityFailure { identity: "T_partner = A B + lambda".into(), residual: None });
        }
        Ok(step)
    }

    /// `B∘A + lambda`, by operator composition.
    pub fn factored(&self) -> SecondOrderOp {
        self.b.compose(&self.a).plus_constant(&self.lambda)
    }

    /// `A∘B + lambda`, by operator composition.
    pub fn refactored(&self) -> SecondOrderOp {
        self.a.compose(&self.b).plus_constant(&self.lambda)
    }

    /// The gauge of `A`.
    pub fn gauge(&self) -> &RatFunc {
        &self.a.beta
    }

    /// `q + p' - 2 p b'/b`, the first-order coefficient law of the partner.
    pub fn partner_q_law(&self) -> RatFunc {
        let p = &self.t.p;
        let two = RatFunc::constant(rat_int(2));
        &(&self.t.q + &p.derivative()) - &(&two * &(p * &self.gauge().log_derivative()))
    }
}

/// `z^{-k-2} eta_a`.
pub fn phi(params: &XLParams, a: u8) -> QuasiRational {
    QuasiRational::new(-params.k() - rat_int(2), RatFunc::from_poly(params.eta(a)))
}

/// `z^{-k-1} eta12`.
pub fn phi12(params: &XLParams) -> QuasiRational {
    QuasiRational::new(-params.k() - Rat::one(), RatFunc::from_poly(params.eta12()))
}

fn over_z(c: Rat) -> RatFunc {
    RatFunc::new(Poly::constant(c), Poly::z())
}

/// The first step: `T0 = L_{k+2}` factored with `phi1 = z^{-k-2} eta1` and
/// gauge `z eta1`.
pub fn make_step1(params: &XLParams) -> Result<FactorizationStep> {
    let t0 = classical_operator(&(params.k() + rat_int(2)));
    let eta1 = RatFunc::from_poly(params.eta1());
    let w1 = &eta1.log_derivative() + &over_z(-params.k() - rat_int(2));
    let gauge = &RatFunc::z() * &eta1;
    FactorizationStep::new(t0, gauge, w1, params.lambda1().clone())
}

/// The second step: `T1` factored with `phi12 = A1[phi2] = z^{-k-1} eta12`
/// and gauge `z eta12 / eta1`.
pub fn make_step2(params: &XLParams, step1: &FactorizationStep) -> Result<FactorizationStep> {
    let eta12 = params.eta12();
    if eta12.is_zero() {
        return Err(Error::DegenerateParams("eta12 vanishes identically".into()));
    }
    let eta12 = RatFunc::from_poly(eta12);
    let w2 = &eta12.log_derivative() + &over_z(-params.k() - Rat::one());
    let gauge = &(&RatFunc::z() * &eta12) / &RatFunc::from_poly(params.eta1());
    FactorizationStep::new(step1.t_partner.clone(), gauge, w2, params.lambda2().clone())
}

/// The full two-step chain for one parameter triple.
#[derive(Clone, Debug)]
pub struct FactorizationChain {
    pub params: XLParams,
    pub step1: FactorizationStep,
    pub step2: FactorizationStep,
}

impl FactorizationChain {
    pub fn build(params: &XLParams) -> Result<Self> {
        let step1 = make_step1(params)?;
        let step2 = make_step2(params, &step1)?;
        Ok(FactorizationChain { params: params.clone(), step1, step2 })
    }

    pub fn t0(&self) -> &SecondOrderOp {
        &self.step1.t
    }

    pub fn t1(&self) -> &SecondOrderOp {
        &self.step1.t_partner
    }

    pub fn t2(&self) -> &SecondOrderOp {
        &self.step2.t_partner
    }

    /// `A2 A1 y`.
    pub fn composite_a(&self, y: &QuasiRational) -> QuasiRational {
        self.step2.a.apply(&self.step1.a.apply(y))
    }

    /// `(A2 A1)[z^j]` against `z^{-k} W[eta1, eta2, z^{k+2} z^j]`.
    pub fn composite_a_matches(&self, j: usize) -> Result<bool> {
        let y = Poly::monomial(Rat::one(), j);
        let lhs = self.composite_a(&QuasiRational::from_poly(y.clone()));
        let rhs = QuasiRational::from_poly(self.params.raw_wronskian(&y)?);
        Ok(lhs == rhs)
    }

    /// `r2 = z eta12''/eta12 + (z - k) eta12'/eta12`.
    pub fn r2_closed_form(&self) -> RatFunc {
        let e = self.params.eta12();
        let den = e.clone();
        let num =
            &e.nth_derivative(2).shift_up(1) + &(&Poly::new(vec![-self.params.k(), Rat::one()]) * &e.derivative());
        RatFunc::new(num, den)
    }
}

/// `z y'' + (k + 1 - z) y' + (2z/eta12)(eta12' (y - y') + W[eta1', eta2'] y)`.
pub fn exceptional_operator(params: &XLParams) -> SecondOrderOp {
    let eta12 = params.eta12();
    let e = RatFunc::from_poly(eta12.clone());
    let two_z = RatFunc::from_poly(Poly::from_ints(&[0, 2]));
    let log_e = e.log_derivative();
    let q = &RatFunc::from_poly(Poly::new(vec![params.k() + Rat::one(), -Rat::one()])) - &(&two_z * &log_e);
    let inner = &eta12.derivative() + &params.eta12_prime_wronskian();
    let r = RatFunc::new(&Poly::from_ints(&[0, 2]) * &inner, eta12);
    SecondOrderOp::new(RatFunc::z(), q, r)
}
