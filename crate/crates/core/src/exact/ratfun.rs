use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::compensated::compensated_horner;
use super::poly::{latex_int_poly, Polynomial};
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

const U: f64 = f64::EPSILON / 2.0;

/// Quotient of polynomials in canonical form.
///
/// Canonical means: `num` and `den` have integer coefficients, no common
/// polynomial factor, no common integer content, and `den` has a positive
/// leading coefficient. Zero is `0/1`. Two rational functions are equal iff
/// their canonical forms are identical, so derived equality is mathematical
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Floating-point value with a rounding error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalEstimate {
    pub value: f64,
    pub error: f64,
}

fn is_unit(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].is_one()
}

/// Remove integer content common to both parts and fix the sign of `den`.
fn finish(mut num: ZPoly, mut den: ZPoly) -> RationalFunction {
    zpoly::trim(&mut num);
    zpoly::trim(&mut den);
    if num.is_empty() {
        return RationalFunction::zero();
    }
    let mut c = zpoly::content(&num).gcd(&zpoly::content(&den));
    if den.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    if !c.is_one() {
        for a in num.iter_mut().chain(den.iter_mut()) {
            *a = &*a / &c;
        }
    }
    RationalFunction {
        num: Polynomial::from_zpoly(num),
        den: Polynomial::from_zpoly(den),
    }
}

fn normalize(num: ZPoly, den: ZPoly) -> Result<RationalFunction> {
    if den.is_empty() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_empty() {
        return Ok(RationalFunction::zero());
    }
    let g = zpoly::gcd(&num, &den);
    if is_unit(&g) {
        Ok(finish(num, den))
    } else {
        Ok(finish(
            zpoly::div_exact(&num, &g),
            zpoly::div_exact(&den, &g),
        ))
    }
}

fn sub_z(a: ZPoly, b: &[BigInt]) -> ZPoly {
    let mut out = a;
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, c) in out.iter_mut().zip(b) {
        *o -= c;
    }
    zpoly::trim(&mut out);
    out
}

fn add_z(a: ZPoly, b: &[BigInt]) -> ZPoly {
    let mut out = a;
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, c) in out.iter_mut().zip(b) {
        *o += c;
    }
    zpoly::trim(&mut out);
    out
}

fn derivative_z(p: &[BigInt]) -> ZPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

impl RationalFunction {
    /// Canonical form of `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let l = num.denominator_lcm().lcm(&den.denominator_lcm());
        normalize(num.to_integer_scaled(&l), den.to_integer_scaled(&l))
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(&BigRational::one())
    }

    pub fn constant(c: &BigRational) -> Self {
        finish(vec![c.numer().clone()], vec![c.denom().clone()])
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let (z, l) = p.to_integer();
        finish(z, vec![l])
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    /// `c / x^k`
    pub fn inverse_x_pow(c: &BigRational, k: usize) -> Self {
        let mut den = vec![BigInt::zero(); k];
        den.push(c.denom().clone());
        finish(vec![c.numer().clone()], den)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == super::Degree::Finite(0)
    }

    fn parts(&self) -> (ZPoly, ZPoly) {
        (
            self.num.to_integer_scaled(&BigInt::one()),
            self.den.to_integer_scaled(&BigInt::one()),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = self.parts();
        let (c, d) = other.parts();
        let g = zpoly::gcd(&b, &d);
        let (b1, d1) = if is_unit(&g) {
            (b.clone(), d.clone())
        } else {
            (zpoly::div_exact(&b, &g), zpoly::div_exact(&d, &g))
        };
        let num = add_z(zpoly::mul(&a, &d1), &zpoly::mul(&c, &b1));
        if num.is_empty() {
            return Self::zero();
        }
        let den = zpoly::mul(&b1, &d);
        // with both inputs reduced, any common factor of num and den divides g
        if is_unit(&g) {
            return finish(num, den);
        }
        let h = zpoly::gcd(&num, &g);
        if is_unit(&h) {
            finish(num, den)
        } else {
            finish(zpoly::div_exact(&num, &h), zpoly::div_exact(&den, &h))
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = self.parts();
        let (c, d) = other.parts();
        let cancel = |p: ZPoly, q: ZPoly| {
            let g = zpoly::gcd(&p, &q);
            if is_unit(&g) {
                (p, q)
            } else {
                (zpoly::div_exact(&p, &g), zpoly::div_exact(&q, &g))
            }
        };
        let (a, d) = cancel(a, d);
        let (c, b) = cancel(c, b);
        finish(zpoly::mul(&a, &c), zpoly::mul(&b, &d))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&other.recip_unchecked()))
    }

    fn recip_unchecked(&self) -> Self {
        let (a, b) = self.parts();
        finish(b, a)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let (mut a, mut b) = self.parts();
        for v in a.iter_mut() {
            *v *= c.numer();
        }
        for v in b.iter_mut() {
            *v *= c.denom();
        }
        finish(a, b)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    /// Quotient-rule derivative in canonical form.
    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            let (a, b) = self.parts();
            return finish(derivative_z(&a), b);
        }
        let (a, b) = self.parts();
        let db = derivative_z(&b);
        let g = zpoly::gcd(&b, &db);
        let (b_g, db_g) = (zpoly::div_exact(&b, &g), zpoly::div_exact(&db, &g));
        // (a'b - ab')/b^2 = (a'(b/g) - a(b'/g)) / (b (b/g))
        let num = sub_z(zpoly::mul(&derivative_z(&a), &b_g), &zpoly::mul(&a, &db_g));
        let den = zpoly::mul(&b, &b_g);
        normalize(num, den).expect("nonzero denominator")
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_exact(x);
        if d.is_zero() {
            return Err(Error::Pole {
                x: super::rational_to_f64(x),
            });
        }
        Ok(self.num.eval_exact(x) / d)
    }

    /// Double-precision value at `x`.
    pub fn eval(&self, x: f64, pole_guard: f64) -> Result<f64> {
        self.eval_estimate(x, pole_guard).map(|e| e.value)
    }

    /// Double-precision value at `x` with a first-order rounding error bound.
    ///
    /// Numerator and denominator are evaluated by compensated Horner on
    /// coefficients scaled by a common power of two. The error bound includes
    /// the rounding of coefficients that are not exact doubles.
    pub fn eval_estimate(&self, x: f64, pole_guard: f64) -> Result<RationalEstimate> {
        if !x.is_finite() {
            return Err(Error::Domain {
                x,
                domain: "finite reals",
            });
        }
        let max_bits = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(|c| c.numer().bits())
            .max()
            .unwrap_or(0);
        let shift = max_bits.saturating_sub(900);
        let (n, n_conv) = to_f64_scaled(&self.num, shift, x);
        let (d, d_conv) = to_f64_scaled(&self.den, shift, x);
        let hn = compensated_horner(&n, x);
        let hd = compensated_horner(&d, x);
        let den_err = hd.error + d_conv;
        if hd.value == 0.0 || hd.value.abs() <= pole_guard * hd.magnitude {
            return Err(Error::Pole { x });
        }
        let value = hn.value / hd.value;
        let error = (hn.error + n_conv + value.abs() * den_err) / hd.value.abs() + U * value.abs();
        Ok(RationalEstimate { value, error })
    }

    /// LaTeX rendering: `\frac{num}{den}`, or the bare numerator when `den = 1`.
    pub fn to_latex(&self) -> String {
        let (a, b) = self.parts();
        let num = latex_int_poly(&a);
        if is_unit(&b) {
            num
        } else {
            format!("\\frac{{{num}}}{{{}}}", latex_int_poly(&b))
        }
    }

    /// True when the plain rendering needs parentheses to act as a factor.
    pub(crate) fn needs_parens(&self) -> bool {
        !self.is_polynomial() || self.num.term_count() > 1
    }
}

/// Coefficients as doubles after dividing by `2^shift`, plus the bound
/// `Σ_{inexact} u |a_k| |x|^k` on conversion error.
fn to_f64_scaled(p: &Polynomial, shift: u64, x: f64) -> (Vec<f64>, f64) {
    let scale = BigRational::from_integer(BigInt::one() << shift);
    let mut err = 0.0;
    let mut xk = 1.0;
    let out = p
        .coeffs()
        .iter()
        .map(|c| {
            let scaled = if shift == 0 { c.clone() } else { c / &scale };
            let v = scaled.to_f64().unwrap_or(0.0);
            let exact = c.is_integer() && shift == 0 && c.numer().bits() <= 53;
            if !exact {
                err += (U * v.abs()).max(f64::MIN_POSITIVE) * xk;
            }
            xk *= x.abs();
            v
        })
        .collect();
    (out, err)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let lead_is_one = self.den.leading().is_some_and(|l| l.is_one());
        let monomial_with_coeff = self.den.degree() > super::Degree::Finite(0) && !lead_is_one;
        if self.den.term_count() > 1 || monomial_with_coeff {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
