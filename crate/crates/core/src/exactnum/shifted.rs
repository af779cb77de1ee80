//! Functions of the form `z^s * p(z)` and `z^s * R(z)` with rational `s`.
//!
//! These carry the quasi-rational factorization functions, whose exponent
//! depends on the (rational) Laguerre parameter. Both types absorb any
//! power of `z` dividing the body into the shift, so "this is a genuine
//! polynomial" reduces to "the shift is a non-negative integer".

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rat::{format_rat, is_integer, rat_int, Rat};
use super::ratfunc::RatFunc;

/// `z^shift * body`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ShiftedPoly {
    shift: Rat,
    body: Poly,
}

impl ShiftedPoly {
    pub fn new(shift: Rat, body: Poly) -> Self {
        if body.is_zero() {
            return ShiftedPoly { shift: Rat::zero(), body };
        }
        let v = body.valuation();
        ShiftedPoly { shift: shift + rat_int(v as i64), body: body.shift_down(v) }
    }

    pub fn from_poly(p: Poly) -> Self {
        ShiftedPoly::new(Rat::zero(), p)
    }

    pub fn shift(&self) -> &Rat {
        &self.shift
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// `z^{s-1} (s p + z p')`.
    pub fn derivative(&self) -> Self {
        let s = &self.shift;
        let body = &self.body.scale(s) + &self.body.derivative().shift_up(1);
        ShiftedPoly::new(s - Rat::one(), body)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ShiftedPoly::new(self.shift.clone(), self.body.scale(c))
    }

    /// Multiplies by `z^e`.
    pub fn mul_z_pow(&self, e: &Rat) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ShiftedPoly { shift: &self.shift + e, body: self.body.clone() }
    }

    /// The plain polynomial, if the shift is a non-negative integer.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if !is_integer(&self.shift) || self.shift.is_negative() {
            return None;
        }
        let v = self.shift.to_integer().to_usize()?;
        Some(self.body.shift_up(v))
    }
}

impl Mul for &ShiftedPoly {
    type Output = ShiftedPoly;
    fn mul(self, rhs: &ShiftedPoly) -> ShiftedPoly {
        ShiftedPoly::new(&self.shift + &rhs.shift, &self.body * &rhs.body)
    }
}

impl fmt::Display for ShiftedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift.is_zero() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "z^({}) * ({})", format_rat(&self.shift), self.body)
        }
    }
}

impl fmt::Debug for ShiftedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShiftedPoly({self})")
    }
}

/// Wronskian determinant of `z^{s_i} p_i`.
///
/// Row `i` of the derivative matrix is `z^{s_i - j} P_ij` with
/// `P_{i,j+1} = (s_i - j) P_ij + z P_ij'`, so the determinant factors as
/// `z^{sum s_i - d(d-1)/2} det(P)`.
pub fn wronskian(fs: &[ShiftedPoly]) -> ShiftedPoly {
    let d = fs.len();
    if d == 0 {
        return ShiftedPoly::from_poly(Poly::one());
    }
    let matrix: Vec<Vec<Poly>> = fs
        .iter()
        .map(|f| {
            let mut row = Vec::with_capacity(d);
            let mut cur = f.body.clone();
            for j in 0..d {
                row.push(cur.clone());
                let s = &f.shift - rat_int(j as i64);
                cur = &cur.scale(&s) + &cur.derivative().shift_up(1);
            }
            row
        })
        .collect();
    let total: Rat = fs.iter().fold(Rat::zero(), |acc, f| acc + &f.shift);
    let shift = total - rat_int((d * (d - 1) / 2) as i64);
    ShiftedPoly::new(shift, determinant(&matrix))
}

/// Wronskian of plain polynomials.
pub fn wronskian_poly(fs: &[Poly]) -> Poly {
    let shifted: Vec<_> = fs.iter().cloned().map(ShiftedPoly::from_poly).collect();
    wronskian(&shifted).to_poly().expect("Wronskian of polynomials is a polynomial")
}

/// Cofactor expansion along the first column; sizes here stay tiny.
fn determinant(m: &[Vec<Poly>]) -> Poly {
    let d = m.len();
    match d {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[1][0] * &m[0][1]),
        _ => {
            let mut acc = Poly::zero();
            for i in 0..d {
                if m[i][0].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> =
                    m.iter().enumerate().filter(|&(r, _)| r != i).map(|(_, row)| row[1..].to_vec()).collect();
                let term = &m[i][0] * &determinant(&minor);
                acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `z^shift * body` with a rational-function body.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuasiRational {
    shift: Rat,
    body: RatFunc,
}

impl QuasiRational {
    pub fn new(shift: Rat, body: RatFunc) -> Self {
        if body.is_zero() {
            return QuasiRational { shift: Rat::zero(), body };
        }
        let vn = body.num().valuation();
        let vd = body.den().valuation();
        if vn == 0 && vd == 0 {
            return QuasiRational { shift, body };
        }
        let body = RatFunc::new(body.num().shift_down(vn), body.den().shift_down(vd));
        QuasiRational { shift: shift + rat_int(vn as i64) - rat_int(vd as i64), body }
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        QuasiRational::new(Rat::zero(), r)
    }

    pub fn from_poly(p: Poly) -> Self {
        QuasiRational::from_ratfunc(RatFunc::from_poly(p))
    }

    pub fn zero() -> Self {
        QuasiRational::from_ratfunc(RatFunc::zero())
    }

    pub fn shift(&self) -> &Rat {
        &self.shift
    }

    pub fn body(&self) -> &RatFunc {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// The rational function, if the shift is an integer.
    pub fn to_ratfunc(&self) -> Option<RatFunc> {
        if !is_integer(&self.shift) {
            return None;
        }
        let e = self.shift.to_integer().to_i64()?;
        let zp = RatFunc::from_poly(Poly::monomial(Rat::one(), e.unsigned_abs() as usize));
        Some(if e >= 0 { &self.body * &zp } else { &self.body / &zp })
    }

    pub fn to_poly(&self) -> Option<Poly> {
        self.to_ratfunc()?.into_poly().ok()
    }

    /// `z^s (R' + s R / z)`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let s_over_z = RatFunc::new(Poly::constant(self.shift.clone()), Poly::z());
        let body = &self.body.derivative() + &(&self.body * &s_over_z);
        QuasiRational::new(self.shift.clone(), body)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuasiRational::new(self.shift.clone(), self.body.scale(c))
    }

    pub fn mul_ratfunc(&self, r: &RatFunc) -> Self {
        QuasiRational::new(self.shift.clone(), &self.body * r)
    }

    pub fn mul_z_pow(&self, e: &Rat) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        QuasiRational { shift: &self.shift + e, body: self.body.clone() }
    }

    /// Rewrites onto a base shift `base`, which must differ from the own
    /// shift by an integer.
    fn body_at(&self, base: &Rat) -> Option<RatFunc> {
        QuasiRational { shift: &self.shift - base, body: self.body.clone() }.to_ratfunc()
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(rhs.clone());
        }
        if rhs.is_zero() {
            return Some(self.clone());
        }
        let base = if self.shift <= rhs.shift { self.shift.clone() } else { rhs.shift.clone() };
        let body = &self.body_at(&base)? + &rhs.body_at(&base)?;
        Some(QuasiRational::new(base, body))
    }
}

impl From<ShiftedPoly> for QuasiRational {
    fn from(p: ShiftedPoly) -> Self {
        QuasiRational::new(p.shift, RatFunc::from_poly(p.body))
    }
}

impl From<Poly> for QuasiRational {
    fn from(p: Poly) -> Self {
        QuasiRational::from_poly(p)
    }
}

impl From<RatFunc> for QuasiRational {
    fn from(r: RatFunc) -> Self {
        QuasiRational::from_ratfunc(r)
    }
}

impl Add for &QuasiRational {
    type Output = QuasiRational;
    fn add(self, rhs: &QuasiRational) -> QuasiRational {
        self.checked_add(rhs).expect("adding quasi-rational functions whose exponents differ by a non-integer")
    }
}

impl Sub for &QuasiRational {
    type Output = QuasiRational;
    fn sub(self, rhs: &QuasiRational) -> QuasiRational {
        self + &(-rhs)
    }
}

impl Neg for &QuasiRational {
    type Output = QuasiRational;
    fn neg(self) -> QuasiRational {
        QuasiRational { shift: self.shift.clone(), body: -&self.body }
    }
}

impl Mul for &QuasiRational {
    type Output = QuasiRational;
    fn mul(self, rhs: &QuasiRational) -> QuasiRational {
        QuasiRational::new(&self.shift + &rhs.shift, &self.body * &rhs.body)
    }
}

impl fmt::Display for QuasiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift.is_zero() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "z^({}) * ({})", format_rat(&self.shift), self.body)
        }
    }
}

impl fmt::Debug for QuasiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiRational({self})")
    }
}
