//! Classical generalized Laguerre polynomials for rational parameters.

use num_traits::One;

use crate::exactnum::rat::{factorial, pochhammer, rat_int};
use crate::exactnum::{Poly, Rat, RatFunc};
use crate::factorization::SecondOrderOp;

/// `L_n^{(alpha)}`, normalized to leading coefficient `(-1)^n / n!`.
///
/// Built from `(j+1) L_{j+1} = (2j + 1 + alpha - z) L_j - (j + alpha) L_{j-1}`.
pub fn laguerre_poly(n: usize, alpha: &Rat) -> Poly {
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::new(vec![alpha + Rat::one(), -Rat::one()]);
    for j in 1..n {
        let jr = rat_int(j as i64);
        let lin = Poly::new(vec![rat_int(2 * j as i64 + 1) + alpha, -Rat::one()]);
        let next = &(&lin * &cur) - &prev.scale(&(&jr + alpha));
        let next = next.scale(&rat_int(j as i64 + 1).recip());
        prev = cur;
        cur = next;
    }
    cur
}

/// `z y'' + (k + 1 - z) y'`.
pub fn classical_operator(k: &Rat) -> SecondOrderOp {
    SecondOrderOp::new(RatFunc::z(), RatFunc::from_poly(Poly::new(vec![k + Rat::one(), -Rat::one()])), RatFunc::zero())
}

/// The classical operator applied to a polynomial, without leaving `Poly`.
pub fn apply_classical(k: &Rat, y: &Poly) -> Poly {
    let d1 = y.derivative();
    let d2 = d1.derivative();
    let q = Poly::new(vec![k + Rat::one(), -Rat::one()]);
    &d2.shift_up(1) + &(&q * &d1)
}

/// `||L_n||^2 / ||L_0||^2 = (k+1)_n / n!` in the weight `z^k e^{-z}`.
pub fn classical_norm_ratio(n: usize, k: &Rat) -> Rat {
    pochhammer(&(k + Rat::one()), n) / factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;
    use num_traits::Zero;

    /// Explicit sum `sum_i (-1)^i binom(n + alpha, n - i) z^i / i!`.
    fn binomial_sum(n: usize, alpha: &Rat) -> Poly {
        let coeffs = (0..=n)
            .map(|i| {
                // binom(n + alpha, n - i) = prod_{t=1}^{n-i} (alpha + i + t) / (n - i)!
                let num = (1..=n - i).fold(Rat::one(), |acc, t| acc * (alpha + rat_int((i + t) as i64)));
                let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                sign * num / factorial(n - i) / factorial(i)
            })
            .collect();
        Poly::new(coeffs)
    }

    fn alphas() -> Vec<Rat> {
        vec![rat(-7, 2), rat(-2, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(3, 1)]
    }

    #[test]
    fn low_degrees() {
        let a = rat(5, 3);
        assert_eq!(laguerre_poly(0, &a), Poly::one());
        assert_eq!(laguerre_poly(1, &a), Poly::new(vec![&a + Rat::one(), -Rat::one()]));
        let two = Poly::new(vec![(&a + rat_int(1)) * (&a + rat_int(2)) / rat_int(2), -(&a + rat_int(2)), rat(1, 2)]);
        assert_eq!(laguerre_poly(2, &a), two);
    }

    #[test]
    fn eigen_relation_grid() {
        for a in alphas() {
            for n in 0..=12 {
                let l = laguerre_poly(n, &a);
                let lhs = apply_classical(&a, &l);
                assert_eq!(&lhs + &l.scale(&rat_int(n as i64)), Poly::zero(), "n={n} alpha={a}");
                let via_op = classical_operator(&a).apply_poly(&l);
                assert_eq!(via_op, RatFunc::from_poly(l.scale(&rat_int(-(n as i64)))));
            }
        }
    }

    #[test]
    fn degree_and_leading_coefficient() {
        for a in alphas() {
            for n in 0..=12 {
                let l = laguerre_poly(n, &a);
                assert_eq!(l.degree(), Some(n));
                let sign = if n % 2 == 0 { Rat::one() } else { -Rat::one() };
                assert_eq!(l.leading(), sign / factorial(n));
            }
        }
    }

    #[test]
    fn recurrence_matches_binomial_sum() {
        for a in alphas() {
            for n in 0..=8 {
                assert_eq!(laguerre_poly(n, &a), binomial_sum(n, &a));
            }
        }
    }

    #[test]
    fn classical_operator_examples() {
        let k = rat(2, 7);
        let op = classical_operator(&k);
        assert!(op.apply_poly(&Poly::one()).is_zero());
        assert_eq!(apply_classical(&k, &Poly::z()), Poly::new(vec![&k + Rat::one(), -Rat::one()]));
    }

    #[test]
    fn norm_ratios() {
        assert_eq!(classical_norm_ratio(0, &rat(3, 4)), Rat::one());
        assert_eq!(classical_norm_ratio(1, &Rat::zero()), Rat::one());
        assert_eq!(classical_norm_ratio(2, &rat(1, 2)), rat(15, 8));
    }
}
