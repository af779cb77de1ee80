//! Verification of the eigenvalue equation, the intertwining relations and
//! the root constraints, packaged as JSON certificates.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::chain::{exceptional_operator, FactorizationChain};
use crate::error::{Error, Result};
use crate::exactnum::rat::{rat, rat_int};
use crate::exactnum::{complex_roots, seeded_rng, Poly, QuasiRational, Rat, RatFunc, DEFAULT_ROOT_TOL, DEFAULT_SEED};
use crate::xcore::{certify_weight_regular, ParamsRecord, XLParams};

pub const DEFAULT_CONSTRAINT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactZero,
    WithinTol,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residual {
    Coeffs(Poly),
    Complex(Vec<[f64; 2]>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub identity: String,
    pub params: ParamsRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Residual>,
}

impl Certificate {
    pub fn exact(identity: impl Into<String>, params: &XLParams, n: Option<usize>) -> Self {
        Certificate { identity: identity.into(), params: params.record(), n, status: Status::ExactZero, residual: None }
    }

    pub fn failed(
        identity: impl Into<String>,
        params: &XLParams,
        n: Option<usize>,
        residual: Option<Residual>,
    ) -> Self {
        Certificate { identity: identity.into(), params: params.record(), n, status: Status::Failed, residual }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Failed
    }

    /// A failed check reported as a certificate instead of an error.
    pub fn from_error(err: &Error, params: &XLParams, n: Option<usize>) -> Self {
        match err {
            Error::IdentityFailure { identity, residual } => {
                Certificate::failed(identity.clone(), params, n, residual.clone().map(Residual::Coeffs))
            }
            other => Certificate::failed(other.to_string(), params, n, None),
        }
    }
}

/// `eta12 (hat L[y] - (2 ell - n) y)` as a polynomial.
pub fn eigen_residual(params: &XLParams, y: &Poly, n: usize) -> Poly {
    let op = exceptional_operator(params);
    let eigenvalue = rat_int(2 * params.ell() as i64 - n as i64);
    let diff = &op.apply_poly(y) - &RatFunc::from_poly(y.scale(&eigenvalue));
    let cleared = &diff * &RatFunc::from_poly(params.eta12());
    // every coefficient of the operator has denominator dividing eta12
    cleared.into_poly().expect("eta12 clears the exceptional operator")
}

/// The eigenvalue equation for the degree-`n` exceptional polynomial.
pub fn verify_eigen(n: usize, params: &XLParams) -> Result<Certificate> {
    let y = params.xlaguerre(n)?;
    verify_eigen_for(&y, n, params)
}

/// The eigenvalue equation for a supplied candidate `y` of degree `n`.
pub fn verify_eigen_for(y: &Poly, n: usize, params: &XLParams) -> Result<Certificate> {
    let residual = eigen_residual(params, y, n);
    if residual.is_zero() {
        Ok(Certificate::exact("eigen: hat L[y] = (2 ell - n) y", params, Some(n)))
    } else {
        Err(Error::IdentityFailure { identity: "eigen: hat L[y] = (2 ell - n) y".into(), residual: Some(residual) })
    }
}

/// `T2[hat L_n] = (ell - n) hat L_n` straight from the factorization chain.
pub fn verify_t2_eigen(n: usize, chain: &FactorizationChain) -> Result<Certificate> {
    let params = &chain.params;
    let y = params.xlaguerre(n)?;
    let lhs = chain.t2().apply_poly(&y);
    let rhs = RatFunc::from_poly(y.scale(&rat_int(params.ell() as i64 - n as i64)));
    if lhs == rhs {
        Ok(Certificate::exact("T2[y] = (ell - n) y", params, Some(n)))
    } else {
        let cleared = (&(&lhs - &rhs) * &RatFunc::from_poly(params.eta12())).num().clone();
        Err(Error::IdentityFailure { identity: "T2[y] = (ell - n) y".into(), residual: Some(cleared) })
    }
}

fn monomial(j: usize) -> QuasiRational {
    QuasiRational::from_poly(Poly::monomial(Rat::one(), j))
}

fn check_on_monomials(
    name: &str,
    params: &XLParams,
    max_power: usize,
    lhs: impl Fn(&QuasiRational) -> QuasiRational,
    rhs: impl Fn(&QuasiRational) -> QuasiRational,
) -> Result<Certificate> {
    for j in 0..=max_power {
        let y = monomial(j);
        let diff = &lhs(&y) - &rhs(&y);
        if !diff.is_zero() {
            return Err(Error::IdentityFailure {
                identity: format!("{name} (fails on z^{j})"),
                residual: diff.to_ratfunc().map(|r| r.num().clone()),
            });
        }
    }
    Ok(Certificate::exact(name, params, None))
}

/// The one-step intertwinings `A T = T̂ A`, `T B = B T̂` for both steps and
/// the two-step relation `T2 A2 A1 = A2 A1 T0`, all on `z^j`, `j <= max_power`.
pub fn verify_intertwining(params: &XLParams, max_power: usize) -> Result<Vec<Certificate>> {
    if max_power < 5 {
        return Err(Error::InvalidParams("intertwining needs monomials up to at least z^5".into()));
    }
    let chain = FactorizationChain::build(params)?;
    let (s1, s2) = (&chain.step1, &chain.step2);
    let mut out = Vec::new();
    for (label, s) in [("1", s1), ("2", s2)] {
        out.push(check_on_monomials(
            &format!("A{label} T{} = T{label} A{label}", label.parse::<u8>().unwrap() - 1),
            params,
            max_power,
            |y| s.a.apply(&s.t.apply(y)),
            |y| s.t_partner.apply(&s.a.apply(y)),
        )?);
        out.push(check_on_monomials(
            &format!("T{} B{label} = B{label} T{label}", label.parse::<u8>().unwrap() - 1),
            params,
            max_power,
            |y| s.t.apply(&s.b.apply(y)),
            |y| s.b.apply(&s.t_partner.apply(y)),
        )?);
    }
    out.push(check_on_monomials(
        "T2 A2 A1 = A2 A1 T0",
        params,
        max_power,
        |y| chain.t2().apply(&chain.composite_a(y)),
        |y| chain.composite_a(&chain.t0().apply(y)),
    )?);
    Ok(out)
}

/// Factorization identities `T0 = B1 A1 + lambda1`, `T1 = B2 A2 + lambda2`,
/// the partners, the composite-A Wronskian form, and `hat L = T2 + ell`.
pub fn verify_chain(params: &XLParams) -> Result<Vec<Certificate>> {
    let chain = FactorizationChain::build(params)?;
    let mut out = vec![
        Certificate::exact("T0 = B1 A1 + lambda1", params, None),
        Certificate::exact("T1 = A1 B1 + lambda1", params, None),
        Certificate::exact("T1 = B2 A2 + lambda2", params, None),
        Certificate::exact("T2 = A2 B2 + lambda2", params, None),
    ];
    for (i, s) in [&chain.step1, &chain.step2].into_iter().enumerate() {
        let name = format!("partner q law, step {}", i + 1);
        if s.refactored().q != s.partner_q_law() {
            return Err(Error::IdentityFailure { identity: name, residual: None });
        }
        out.push(Certificate::exact(name, params, None));
    }
    for j in 0..=5 {
        if !chain.composite_a_matches(j)? {
            return Err(Error::IdentityFailure {
                identity: format!("A2 A1 = z^-k W[eta1, eta2, z^(k+2) .] (fails on z^{j})"),
                residual: None,
            });
        }
    }
    out.push(Certificate::exact("A2 A1 = z^-k W[eta1, eta2, z^(k+2) .]", params, None));
    let shifted = chain.t2().plus_constant(&rat_int(params.ell() as i64));
    if !exceptional_operator(params).agrees_with(&shifted) {
        return Err(Error::IdentityFailure { identity: "hat L = T2 + ell".into(), residual: None });
    }
    out.push(Certificate::exact("hat L = T2 + ell", params, None));
    if chain.t2().r != chain.r2_closed_form() {
        return Err(Error::IdentityFailure { identity: "r2 closed form".into(), residual: None });
    }
    out.push(Certificate::exact("r2 = z eta12''/eta12 + (z - k) eta12'/eta12", params, None));
    Ok(out)
}

/// Residuals of `-2 z y'(z) + (z - k + z eta12''(z)/eta12'(z)) y(z)` at the
/// roots of `eta12`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintReport {
    pub roots: Vec<Complex64>,
    /// Divided by `max(1, |y(z_i)|, |z_i y'(z_i)|)`.
    pub residuals: Vec<Complex64>,
    pub tol: f64,
}

impl ConstraintReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max_residual() <= self.tol
    }

    pub fn certificate(&self, params: &XLParams, n: Option<usize>) -> Certificate {
        Certificate {
            identity: "root constraints at zeros of eta12".into(),
            params: params.record(),
            n,
            status: if self.passes() { Status::WithinTol } else { Status::Failed },
            residual: Some(Residual::Complex(self.residuals.iter().map(|r| [r.re, r.im]).collect())),
        }
    }
}

/// Evaluates the constraints for `y`. Every root of `eta12` must be simple:
/// `|eta12'(z_i)|` relative to its coefficient scale has to exceed `tol`.
pub fn constraint_check(y: &Poly, params: &XLParams, tol: f64) -> Result<ConstraintReport> {
    let eta12 = params.eta12();
    if eta12.degree().unwrap_or(0) == 0 {
        return Ok(ConstraintReport { roots: vec![], residuals: vec![], tol });
    }
    let roots = complex_roots(&eta12, DEFAULT_ROOT_TOL)?;
    let d1 = eta12.derivative().to_f64_coeffs();
    let d2 = eta12.nth_derivative(2).to_f64_coeffs();
    let yc = y.to_f64_coeffs();
    let yd = y.derivative().to_f64_coeffs();
    let k = crate::exactnum::rat::to_f64(params.k());
    let eval = |c: &[f64], z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let scale = |c: &[f64], z: Complex64| c.iter().rev().fold(0.0, |acc, a| acc * z.norm() + a.abs());

    let mut residuals = Vec::with_capacity(roots.len());
    for (i, &z) in roots.iter().enumerate() {
        let e1 = eval(&d1, z);
        let s1 = scale(&d1, z);
        if e1.norm() <= tol * s1.max(1.0) {
            return Err(Error::MultipleRoot { index: i, derivative: e1.norm() });
        }
        let e2 = eval(&d2, z);
        let yv = eval(&yc, z);
        let ydv = eval(&yd, z);
        let coeff = z - k + z * e2 / e1;
        let raw = -2.0 * z * ydv + coeff * yv;
        let norm = 1f64.max(yv.norm()).max((z * ydv).norm());
        residuals.push(raw / norm);
    }
    Ok(ConstraintReport { roots, residuals, tol })
}

/// Weight-regularity certificate, as a bundle entry.
pub fn weight_certificate(params: &XLParams) -> Certificate {
    match certify_weight_regular(params) {
        Ok(_) => Certificate::exact("eta12 has no zeros on [0, inf) (Sturm)", params, None),
        Err(e) => Certificate::failed(format!("eta12 has no zeros on [0, inf) (Sturm): {e}"), params, None, None),
    }
}

/// Settings for [`verify_suite`].
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub n_range: RangeInclusive<usize>,
    pub constraint_tol: f64,
    /// Picks the degree and coefficient perturbed by `inject_fault`.
    pub seed: u64,
    /// Perturb one coefficient of one family member by `1/1000` and verify
    /// the result as a negative control.
    pub inject_fault: bool,
}

impl SuiteOptions {
    pub fn for_params(params: &XLParams) -> Self {
        let ell = params.ell();
        SuiteOptions {
            n_range: ell..=ell + 8,
            constraint_tol: DEFAULT_CONSTRAINT_TOL,
            seed: DEFAULT_SEED,
            inject_fault: false,
        }
    }
}

fn certify(result: Result<Certificate>, params: &XLParams, n: Option<usize>) -> Result<Certificate> {
    match result {
        Ok(c) => Ok(c),
        Err(e @ (Error::IdentityFailure { .. } | Error::MultipleRoot { .. })) => {
            Ok(Certificate::from_error(&e, params, n))
        }
        Err(e) => Err(e),
    }
}

/// The eigenvalue equation, `T2` eigen-relation and root constraints for
/// every degree in range, the operator identities, and the weight
/// certificate when `k > m2 - 2`. Identity failures become failed
/// certificates; parameter errors are returned.
pub fn verify_suite(params: &XLParams, opts: &SuiteOptions) -> Result<Vec<Certificate>> {
    let chain = FactorizationChain::build(params)?;
    let mut out = Vec::new();
    for n in opts.n_range.clone() {
        let y = params.xlaguerre(n)?;
        out.push(certify(verify_eigen_for(&y, n, params), params, Some(n))?);
        out.push(certify(verify_t2_eigen(n, &chain), params, Some(n))?);
        out.push(certify(
            constraint_check(&y, params, opts.constraint_tol).map(|r| r.certificate(params, Some(n))),
            params,
            Some(n),
        )?);
    }
    match verify_intertwining(params, 6) {
        Ok(c) => out.extend(c),
        Err(e) => out.push(certify(Err(e), params, None)?),
    }
    match verify_chain(params) {
        Ok(c) => out.extend(c),
        Err(e) => out.push(certify(Err(e), params, None)?),
    }
    if params.weight_regular() {
        out.push(weight_certificate(params));
    }
    if opts.inject_fault {
        let mut rng = seeded_rng(opts.seed);
        let (lo, hi) = (*opts.n_range.start(), *opts.n_range.end());
        let n = rng.random_range(lo..=hi);
        let y = params.xlaguerre(n)?;
        let idx = rng.random_range(0..=n);
        let mut coeffs = y.coeffs().to_vec();
        coeffs[idx] += rat(1, 1000);
        let faulty = Poly::new(coeffs);
        let mut cert = certify(verify_eigen_for(&faulty, n, params), params, Some(n))?;
        cert.identity = format!("{} [fault injected at z^{idx}]", cert.identity);
        out.push(cert);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn p(k: Rat, m1: usize, m2: usize) -> XLParams {
        XLParams::new(k, m1, m2).unwrap()
    }

    #[test]
    fn eigen_holds_212() {
        let x = p(rat_int(2), 1, 2);
        for n in 2..=10 {
            assert_eq!(verify_eigen(n, &x).unwrap().status, Status::ExactZero);
        }
    }

    #[test]
    fn eigen_classical_case() {
        let x = p(rat(3, 4), 0, 1);
        for n in 0..=6 {
            assert!(verify_eigen(n, &x).is_ok());
        }
    }

    #[test]
    fn eigen_detects_perturbation() {
        let x = p(rat_int(2), 1, 2);
        let y = x.xlaguerre(4).unwrap();
        let mut c = y.coeffs().to_vec();
        c[1] += rat(1, 1000);
        let err = verify_eigen_for(&Poly::new(c), 4, &x).unwrap_err();
        match err {
            Error::IdentityFailure { residual: Some(r), .. } => assert!(!r.is_zero()),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn t2_eigen() {
        let x = p(rat(5, 2), 1, 3);
        let chain = FactorizationChain::build(&x).unwrap();
        for n in 3..=6 {
            assert!(verify_t2_eigen(n, &chain).is_ok());
        }
    }

    #[test]
    fn intertwining_and_chain() {
        for x in [p(rat_int(2), 1, 2), p(rat(5, 2), 1, 3)] {
            let certs = verify_intertwining(&x, 6).unwrap();
            assert_eq!(certs.len(), 5);
            assert!(verify_chain(&x).unwrap().iter().all(Certificate::passed));
        }
        assert!(verify_intertwining(&p(rat_int(2), 1, 2), 3).is_err());
    }

    #[test]
    fn constraints_hold_for_family_members() {
        let x = p(rat_int(2), 1, 2);
        for n in 2..=6 {
            let rep = constraint_check(&x.xlaguerre(n).unwrap(), &x, DEFAULT_CONSTRAINT_TOL).unwrap();
            assert_eq!(rep.roots.len(), 2);
            assert!(rep.passes(), "n={n} residual {}", rep.max_residual());
        }
    }

    #[test]
    fn constraints_hold_for_eta12_squared_multiples() {
        let x = p(rat_int(2), 1, 2);
        let e = x.eta12();
        let y = &(&e * &e) * &Poly::from_ints(&[3, -1, 2]);
        assert!(constraint_check(&y, &x, DEFAULT_CONSTRAINT_TOL).unwrap().passes());
    }

    #[test]
    fn constraints_fail_for_generic_polynomial() {
        let x = p(rat_int(2), 1, 2);
        let y = Poly::from_ints(&[1, 2, -1, 3]);
        assert!(!constraint_check(&y, &x, DEFAULT_CONSTRAINT_TOL).unwrap().passes());
    }

    #[test]
    fn roots_of_eta12_212() {
        // eta12 = -(z^2 + 6z + 6)/2, roots -3 ± sqrt(3): real and negative
        let x = p(rat_int(2), 1, 2);
        let rep = constraint_check(&Poly::one(), &x, 1e-8).unwrap();
        let s3 = 3f64.sqrt();
        assert!((rep.roots[0].re - (-3.0 - s3)).abs() < 1e-12);
        assert!((rep.roots[1].re - (-3.0 + s3)).abs() < 1e-12);
    }

    #[test]
    fn suite_passes_and_fault_is_caught() {
        let x = p(rat(5, 2), 1, 3);
        let opts = SuiteOptions { n_range: 3..=8, ..SuiteOptions::for_params(&x) };
        let certs = verify_suite(&x, &opts).unwrap();
        assert!(certs.iter().all(Certificate::passed));
        let faulty = verify_suite(&x, &SuiteOptions { inject_fault: true, ..opts }).unwrap();
        let last = faulty.last().unwrap();
        assert_eq!(last.status, Status::Failed);
        assert!(matches!(&last.residual, Some(Residual::Coeffs(r)) if !r.is_zero()));
    }

    #[test]
    fn certificate_json_shape() {
        let x = p(rat_int(2), 1, 2);
        let c = verify_eigen(2, &x).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"identity":"eigen: hat L[y] = (2 ell - n) y","params":{"k":"2/1","m1":1,"m2":2},"n":2,"status":"exact-zero"}"#
        );
    }
}
