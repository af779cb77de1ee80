//! The two-step exceptional Laguerre family.
//!
//! For integers `0 <= m1 < m2` and rational `k`, the seed polynomials are
//! `eta_a = L_{m_a}^{(-k-2)}` and their Wronskian `eta12 = W[eta1, eta2]`.
//! The family member of degree `n >= ell = m1 + m2 - 1` is
//!
//! ```text
//! hat L_n = C z^{-k} W[eta1, eta2, z^{k+2} L_{n-ell}^{(k+2)}]
//! ```
//!
//! where `C` makes the leading coefficient `(-1)^n / ((n-ell)! m1! m2!)`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rat::{factorial, format_rat, rat_int, serde_rat, sign};
use crate::exactnum::{sturm_nonneg_root_count, wronskian, wronskian_poly, Poly, Rat, ShiftedPoly};
use crate::laguerre::laguerre_poly;

/// Validated parameter triple `(k, m1, m2)` with its derived quantities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XLParams {
    k: Rat,
    m1: usize,
    m2: usize,
    ell: usize,
    lambda1: Rat,
    lambda2: Rat,
    weight_regular: bool,
}

impl XLParams {
    pub fn new(k: Rat, m1: usize, m2: usize) -> Result<Self> {
        if m1 >= m2 {
            return Err(Error::InvalidParams(format!("need m1 < m2, got m1 = {m1}, m2 = {m2}")));
        }
        let ell = m1 + m2 - 1;
        let lambda1 = &k + rat_int(2) - rat_int(m1 as i64);
        let lambda2 = &k + rat_int(2) - rat_int(m2 as i64);
        let weight_regular = k > rat_int(m2 as i64 - 2);
        let params = XLParams { k, m1, m2, ell, lambda1, lambda2, weight_regular };
        // eta1 and eta2 have distinct degrees, so this never fires; kept as
        // the single place that would report it.
        if params.eta12().is_zero() {
            return Err(Error::DegenerateParams("eta12 vanishes identically".into()));
        }
        Ok(params)
    }

    pub fn k(&self) -> &Rat {
        &self.k
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `k + 2 - m1`.
    pub fn lambda1(&self) -> &Rat {
        &self.lambda1
    }

    /// `k + 2 - m2`.
    pub fn lambda2(&self) -> &Rat {
        &self.lambda2
    }

    /// `k > m2 - 2`: the exceptional weight has no singularity on `[0, ∞)`.
    pub fn weight_regular(&self) -> bool {
        self.weight_regular
    }

    pub fn eta(&self, a: u8) -> Poly {
        let m = match a {
            1 => self.m1,
            2 => self.m2,
            _ => panic!("eta index must be 1 or 2"),
        };
        laguerre_poly(m, &self.seed_alpha())
    }

    pub fn eta1(&self) -> Poly {
        self.eta(1)
    }

    pub fn eta2(&self) -> Poly {
        self.eta(2)
    }

    pub fn eta12(&self) -> Poly {
        wronskian_poly(&[self.eta1(), self.eta2()])
    }

    /// `W[eta1', eta2']`, which appears in the exceptional operator.
    pub fn eta12_prime_wronskian(&self) -> Poly {
        wronskian_poly(&[self.eta1().derivative(), self.eta2().derivative()])
    }

    /// `-k - 2`, the parameter of the seed polynomials.
    pub fn seed_alpha(&self) -> Rat {
        -&self.k - rat_int(2)
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n < self.ell {
            return Err(Error::InvalidParams(format!("degree n = {n} is below ell = {}", self.ell)));
        }
        Ok(())
    }

    /// Normalization constant
    /// `((m1 - m2)(k + 2 - m1 + n - ell)(k + 2 - m2 + n - ell))^{-1}`.
    pub fn norm_constant_c(&self, n: usize) -> Result<Rat> {
        self.check_degree(n)?;
        let j = rat_int((n - self.ell) as i64);
        let f1 = &self.lambda1 + &j;
        let f2 = &self.lambda2 + &j;
        let d = rat_int(self.m1 as i64 - self.m2 as i64) * f1 * f2;
        if d.is_zero() {
            return Err(Error::PoleInC { n });
        }
        Ok(d.recip())
    }

    /// `(-1)^n / ((n - ell)! m1! m2!)`.
    pub fn expected_leading(&self, n: usize) -> Rat {
        let sign = if n.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        sign / (factorial(n - self.ell) * factorial(self.m1) * factorial(self.m2))
    }

    /// `z^{-k} W[eta1, eta2, z^{k+2} y]` for a polynomial `y`, before any
    /// normalization. The result is a polynomial for every `y`.
    pub fn raw_wronskian(&self, y: &Poly) -> Result<Poly> {
        let third = ShiftedPoly::new(&self.k + rat_int(2), y.clone());
        let w = wronskian(&[ShiftedPoly::from_poly(self.eta1()), ShiftedPoly::from_poly(self.eta2()), third]);
        let w = w.mul_z_pow(&-&self.k);
        w.to_poly().ok_or_else(|| Error::NotPolynomial { shift: format_rat(w.shift()) })
    }

    /// The exceptional polynomial of degree `n`.
    pub fn xlaguerre(&self, n: usize) -> Result<Poly> {
        let c = self.norm_constant_c(n)?;
        let seed = laguerre_poly(n - self.ell, &(&self.k + rat_int(2)));
        Ok(self.raw_wronskian(&seed)?.scale(&c))
    }

    /// `z eta12' - (k + 1 + z) eta12 + (m2 - m1) eta1 eta2`, identically zero.
    pub fn eta12_ode_residual(&self) -> Poly {
        let e = self.eta12();
        let lin = Poly::new(vec![&self.k + Rat::one(), Rat::one()]);
        let prod = (&self.eta1() * &self.eta2()).scale(&rat_int((self.m2 - self.m1) as i64));
        &(&e.derivative().shift_up(1) - &(&lin * &e)) + &prod
    }

    pub fn record(&self) -> ParamsRecord {
        ParamsRecord { k: self.k.clone(), m1: self.m1, m2: self.m2 }
    }
}

/// Type II exceptional Laguerre polynomial of degree `n`:
/// `z^{-k} W[L_m^{(-k-1)}, z^{k+1} L_{n-m}^{(k+1)}]`.
pub fn type2_xlaguerre(n: usize, m: usize, k: &Rat) -> Result<Poly> {
    if m == 0 {
        return Err(Error::InvalidParams("type II needs m >= 1".into()));
    }
    if n < m {
        return Err(Error::InvalidParams(format!("type II needs n >= m, got n = {n}, m = {m}")));
    }
    let first = ShiftedPoly::from_poly(laguerre_poly(m, &(-k - Rat::one())));
    let second = ShiftedPoly::new(k + Rat::one(), laguerre_poly(n - m, &(k + Rat::one())));
    let w = wronskian(&[first, second]).mul_z_pow(&-k);
    w.to_poly().ok_or_else(|| Error::NotPolynomial { shift: format_rat(w.shift()) })
}

/// The factor `c` with `type2_xlaguerre(n, m, k) = c * hat L_n` for the
/// parameters `(k, 0, m + 1)`: `c = -1 / (C (k + 2 + n - m))`.
///
/// With `m1 = 0` the first Wronskian column is constant, and
/// `d/dz [z^{k+2} L_j^{(k+2)}] = (j + k + 2) z^{k+1} L_j^{(k+1)}` together with
/// `eta2' = -L_m^{(-k-1)}` gives the factor.
pub fn type2_factor(n: usize, m: usize, k: &Rat) -> Result<Rat> {
    let params = XLParams::new(k.clone(), 0, m + 1)?;
    let c = params.norm_constant_c(n)?;
    let tail = k + rat_int(2 + n as i64 - m as i64);
    if tail.is_zero() {
        return Err(Error::PoleInC { n });
    }
    Ok(-(c * tail).recip())
}

/// Exact certificate that `eta12` has no zero on `[0, ∞)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WeightCertificate {
    pub params: ParamsRecord,
    pub eta12: Poly,
    pub nonneg_root_count: usize,
    /// Sign of `eta12(0)`; the sign on the whole half-line when the count is 0.
    pub sign_on_half_line: i32,
}

/// Sturm-chain certificate for weight regularity. Rejects parameters with
/// `k <= m2 - 2` before counting.
pub fn certify_weight_regular(params: &XLParams) -> Result<WeightCertificate> {
    if !params.weight_regular() {
        return Err(Error::WeightNotRegular(format!(
            "k = {} is not greater than m2 - 2 = {}",
            format_rat(params.k()),
            params.m2() as i64 - 2
        )));
    }
    let eta12 = params.eta12();
    let count = sturm_nonneg_root_count(&eta12);
    let cert = WeightCertificate {
        params: params.record(),
        sign_on_half_line: sign(&eta12.coeff(0)),
        eta12,
        nonneg_root_count: count,
    };
    if count != 0 {
        return Err(Error::WeightNotRegular(format!("eta12 has {count} roots on [0, inf)")));
    }
    Ok(cert)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ParamsRecord {
    #[serde(with = "serde_rat")]
    pub k: Rat,
    pub m1: usize,
    pub m2: usize,
}

/// One row of a polynomial table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyRecord {
    #[serde(with = "serde_rat")]
    pub k: Rat,
    pub m1: usize,
    pub m2: usize,
    pub n: usize,
    pub coeffs: Poly,
    pub degree: usize,
    #[serde(with = "serde_rat")]
    pub leading: Rat,
}

impl PolyRecord {
    pub fn new(params: &XLParams, n: usize, poly: Poly) -> Self {
        PolyRecord {
            k: params.k().clone(),
            m1: params.m1(),
            m2: params.m2(),
            n,
            degree: poly.degree().unwrap_or(0),
            leading: poly.leading(),
            coeffs: poly,
        }
    }
}

/// Whether `a` is an exact rational multiple of `b`, returning the factor.
pub fn scalar_multiple(a: &Poly, b: &Poly) -> Option<Rat> {
    if b.is_zero() {
        return a.is_zero().then(Rat::zero);
    }
    let factor = a.leading() / b.leading();
    (a == &b.scale(&factor)).then_some(factor)
}

/// Sign of the leading coefficient of a polynomial.
pub fn leading_sign(p: &Poly) -> i32 {
    if p.is_zero() {
        0
    } else if p.leading().is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;

    fn p(k: Rat, m1: usize, m2: usize) -> XLParams {
        XLParams::new(k, m1, m2).unwrap()
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(matches!(XLParams::new(rat_int(2), 2, 2), Err(Error::InvalidParams(_))));
        assert!(matches!(XLParams::new(rat_int(2), 3, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn derived_quantities() {
        let x = p(rat(5, 2), 1, 3);
        assert_eq!(x.ell(), 3);
        assert_eq!(x.lambda1(), &rat(7, 2));
        assert_eq!(x.lambda2(), &rat(3, 2));
        assert!(x.weight_regular());
        assert!(!p(rat_int(1), 1, 3).weight_regular());
    }

    #[test]
    fn seed_polynomials() {
        let k = rat(3, 5);
        let x = p(k.clone(), 0, 2);
        assert_eq!(x.eta1(), Poly::one());
        let x = p(k.clone(), 1, 2);
        assert_eq!(x.eta1(), Poly::new(vec![-&k - Rat::one(), -Rat::one()]));
        let two = Poly::new(vec![&k * (&k + Rat::one()) / rat_int(2), k.clone(), rat(1, 2)]);
        assert_eq!(x.eta2(), two);
    }

    #[test]
    fn eta12_examples() {
        assert_eq!(p(rat(7, 3), 0, 1).eta12(), Poly::from_ints(&[-1]));
        let e = p(rat_int(2), 1, 2).eta12();
        assert_eq!(e, Poly::new(vec![rat_int(-3), rat_int(-3), rat(-1, 2)]));
    }

    #[test]
    fn eta12_first_order_ode() {
        for (k, m1, m2) in [(rat_int(2), 1, 2), (rat(5, 2), 1, 3), (rat(-7, 3), 2, 5), (rat_int(0), 0, 4)] {
            let x = p(k, m1, m2);
            assert!(x.eta12_ode_residual().is_zero());
            assert_eq!(x.eta12().degree(), Some(x.ell()));
        }
    }

    #[test]
    fn constant_c() {
        // corrected form: factors use n - ell
        assert_eq!(p(rat_int(2), 1, 2).norm_constant_c(2).unwrap(), rat(-1, 6));
        let k = rat(7, 3);
        let c = p(k.clone(), 0, 1).norm_constant_c(4).unwrap();
        let expect = (rat_int(-1) * (&k + rat_int(6)) * (&k + rat_int(5))).recip();
        assert_eq!(c, expect);
        // k + 2 - m1 + n - ell = 0 at k = -1, (1, 2), n = 2
        assert!(matches!(p(rat_int(-1), 1, 2).norm_constant_c(2), Err(Error::PoleInC { n: 2 })));
        assert!(p(rat_int(2), 1, 2).norm_constant_c(1).is_err());
    }

    #[test]
    fn classical_reduction_small() {
        let k = rat(7, 3);
        let x = p(k.clone(), 0, 1);
        for n in 0..=8 {
            assert_eq!(x.xlaguerre(n).unwrap(), laguerre_poly(n, &k));
        }
    }

    #[test]
    fn normalization_and_degree() {
        for (k, m1, m2) in [(rat_int(2), 1, 2), (rat(5, 2), 1, 3), (rat_int(3), 2, 3), (rat(-1, 3), 1, 4)] {
            let x = p(k, m1, m2);
            for n in x.ell()..=x.ell() + 5 {
                let l = x.xlaguerre(n).unwrap();
                assert_eq!(l.degree(), Some(n));
                assert_eq!(l.leading(), x.expected_leading(n));
            }
        }
    }

    #[test]
    fn type2_proportionality() {
        for (m, k) in [(1, rat_int(1)), (2, rat_int(3)), (2, rat(7, 3))] {
            let x = p(k.clone(), 0, m + 1);
            for n in m..=m + 4 {
                let t2 = type2_xlaguerre(n, m, &k).unwrap();
                assert_eq!(t2.degree(), Some(n));
                let hat = x.xlaguerre(n).unwrap();
                assert_eq!(scalar_multiple(&t2, &hat), Some(type2_factor(n, m, &k).unwrap()));
            }
        }
        assert!(type2_xlaguerre(1, 2, &rat_int(1)).is_err());
    }

    #[test]
    fn weight_certificate() {
        let cert = certify_weight_regular(&p(rat_int(2), 1, 2)).unwrap();
        assert_eq!(cert.nonneg_root_count, 0);
        // eta12(0) = -3 for (2, 1, 2): the weight is regular, eta12 is negative
        assert_eq!(cert.sign_on_half_line, -1);
        assert!(matches!(certify_weight_regular(&p(rat_int(0), 1, 2)), Err(Error::WeightNotRegular(_))));
    }

    #[test]
    fn record_json() {
        let x = p(rat(5, 2), 1, 3);
        let rec = PolyRecord::new(&x, 3, x.xlaguerre(3).unwrap());
        let s = serde_json::to_string(&rec).unwrap();
        assert!(s.starts_with(r#"{"k":"5/2","m1":1,"m2":3,"n":3,"coeffs":["#));
        let back: PolyRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rec);
    }
}
