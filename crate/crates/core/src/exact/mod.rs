//! Exact substrate: arbitrary-precision rationals, dense univariate
//! polynomials over them, and canonical rational functions.

mod compensated;
mod poly;
mod ratfun;
mod zpoly;

pub use compensated::{compensated_horner, two_prod, two_sum, HornerEstimate, NeumaierSum};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{Degree, Polynomial};
pub use ratfun::{RationalEstimate, RationalFunction};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &BigRational, b: &BigRational, op: RatOp) -> Result<BigRational> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn factorial(n: u64) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) * (n - i) / (i + 1) stays integral at every step
        acc *= n - i;
        acc /= i + 1;
    }
    BigRational::from_integer(acc)
}

/// The exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("{x} is not finite")))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `floor(log2 |q|)`-ish magnitude estimate, exact to within one.
pub(crate) fn log2_magnitude(q: &BigRational) -> i64 {
    if q.is_zero() {
        return i64::MIN / 4;
    }
    q.numer().bits() as i64 - q.denom().bits() as i64
}
