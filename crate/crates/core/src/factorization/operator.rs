//! Linear differential operators with rational-function coefficients.

use crate::exactnum::{Poly, QuasiRational, Rat, RatFunc};

/// `y ↦ p y'' + q y' + r y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderOp {
    pub p: RatFunc,
    pub q: RatFunc,
    pub r: RatFunc,
}

/// `y ↦ beta (y' - w y)`. The kernel is spanned by `exp(∫ w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderOp {
    pub beta: RatFunc,
    pub w: RatFunc,
}

impl SecondOrderOp {
    pub fn new(p: RatFunc, q: RatFunc, r: RatFunc) -> Self {
        assert!(!p.is_zero(), "second-order operator with vanishing leading coefficient");
        SecondOrderOp { p, q, r }
    }

    pub fn apply(&self, y: &QuasiRational) -> QuasiRational {
        let d1 = y.derivative();
        let d2 = d1.derivative();
        let a = d2.mul_ratfunc(&self.p);
        let b = d1.mul_ratfunc(&self.q);
        let c = y.mul_ratfunc(&self.r);
        &(&a + &b) + &c
    }

    pub fn apply_poly(&self, y: &Poly) -> RatFunc {
        self.apply(&QuasiRational::from_poly(y.clone()))
            .to_ratfunc()
            .expect("operator with rational coefficients maps rational functions to rational functions")
    }

    pub fn apply_ratfunc(&self, y: &RatFunc) -> RatFunc {
        self.apply(&QuasiRational::from_ratfunc(y.clone()))
            .to_ratfunc()
            .expect("operator with rational coefficients maps rational functions to rational functions")
    }

    /// `self + c`.
    pub fn plus_constant(&self, c: &Rat) -> Self {
        SecondOrderOp { p: self.p.clone(), q: self.q.clone(), r: &self.r + &RatFunc::constant(c.clone()) }
    }

    /// First monomial `z^j`, `j <= max_power`, on which the two operators differ.
    pub fn first_disagreement(&self, other: &SecondOrderOp, max_power: usize) -> Option<usize> {
        (0..=max_power).find(|&j| {
            let y = Poly::monomial(Rat::from_integer(1.into()), j);
            self.apply_poly(&y) != other.apply_poly(&y)
        })
    }

    /// Agreement on `1, z, z^2`, which pins down all three coefficients.
    pub fn agrees_with(&self, other: &SecondOrderOp) -> bool {
        self.first_disagreement(other, 2).is_none()
    }
}

impl FirstOrderOp {
    pub fn new(beta: RatFunc, w: RatFunc) -> Self {
        assert!(!beta.is_zero(), "first-order operator with vanishing gauge");
        FirstOrderOp { beta, w }
    }

    pub fn apply(&self, y: &QuasiRational) -> QuasiRational {
        let d = y.derivative();
        let wy = y.mul_ratfunc(&self.w);
        (&d - &wy).mul_ratfunc(&self.beta)
    }

    pub fn apply_poly(&self, y: &Poly) -> RatFunc {
        self.apply(&QuasiRational::from_poly(y.clone()))
            .to_ratfunc()
            .expect("operator with rational coefficients maps rational functions to rational functions")
    }

    /// The composite `self ∘ inner` as a second-order operator.
    pub fn compose(&self, inner: &FirstOrderOp) -> SecondOrderOp {
        let (ba, wa) = (&self.beta, &self.w);
        let (bb, wb) = (&inner.beta, &inner.w);
        let bw = bb * wb;
        let p = ba * bb;
        let q = ba * &(&(&bb.derivative() - &bw) - &(wa * bb));
        let r = ba * &(&(wa * &bw) - &bw.derivative());
        SecondOrderOp::new(p, q, r)
    }

    pub fn is_zero_on(&self, y: &QuasiRational) -> bool {
        self.apply(y).is_zero()
    }
}

impl std::fmt::Display for SecondOrderOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] y'' + [{}] y' + [{}] y", self.p, self.q, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::{rat, rat_int};

    #[test]
    fn second_order_on_monomial() {
        // (z y'' + y')[z^2] = 2z + 2z
        let op = SecondOrderOp::new(RatFunc::z(), RatFunc::one(), RatFunc::zero());
        assert_eq!(op.apply_poly(&Poly::from_ints(&[0, 0, 1])), RatFunc::from_poly(Poly::from_ints(&[0, 4])));
    }

    #[test]
    fn kernel_of_first_order() {
        // w = phi'/phi for phi = z^{-3/2} (1 + z)
        let phi = QuasiRational::new(rat(-3, 2), RatFunc::from_poly(Poly::from_ints(&[1, 1])));
        let w = &RatFunc::from_poly(Poly::from_ints(&[1, 1])).log_derivative()
            + &RatFunc::new(Poly::constant(rat(-3, 2)), Poly::z());
        let a = FirstOrderOp::new(RatFunc::from_poly(Poly::from_ints(&[0, 2, 5])), w);
        assert!(a.is_zero_on(&phi));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let a = FirstOrderOp::new(
            RatFunc::from_poly(Poly::from_ints(&[1, 2])),
            RatFunc::new(Poly::from_ints(&[3]), Poly::from_ints(&[1, 0, 1])),
        );
        let b = FirstOrderOp::new(
            RatFunc::new(Poly::one(), Poly::from_ints(&[2, 1])),
            RatFunc::from_poly(Poly::from_ints(&[-1, 1])),
        );
        let ab = a.compose(&b);
        for j in 0..5 {
            let y = QuasiRational::from_poly(Poly::monomial(rat_int(1), j));
            assert_eq!(ab.apply(&y), a.apply(&b.apply(&y)));
        }
        let y = QuasiRational::new(rat(2, 3), RatFunc::from_poly(Poly::from_ints(&[1, 1])));
        assert_eq!(ab.apply(&y), a.apply(&b.apply(&y)));
    }
}
