//! Rigorous high-precision values of `log(1-x)` and `Li_s(x)` at rational points.
//!
//! Values are returned as dyadic rationals `m / 2^prec` with absolute error at
//! most `2^-prec`. Internally the series run in fixed point with enough guard
//! bits to absorb the per-operation rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rational_to_f64;

fn bit_len(v: u64) -> u64 {
    64 - v.leading_zeros() as u64
}

/// `round(v / 2^bits)`
fn round_shift(v: BigInt, bits: u64) -> BigInt {
    if bits == 0 {
        return v;
    }
    let half = BigInt::one() << (bits - 1);
    (v + half) >> bits
}

/// `round(q * 2^w)`
fn to_fixed(q: &BigRational, w: u64) -> BigInt {
    let scaled = q.numer() << w;
    let (quot, rem) = scaled.div_mod_floor(q.denom());
    if (rem << 1u32) >= *q.denom() {
        quot + 1
    } else {
        quot
    }
}

fn fixed_to_rational(m: BigInt, w: u64) -> BigRational {
    BigRational::new(m, BigInt::one() << w)
}

/// `atanh(y)` in fixed point with `w` fractional bits; `|y| <= 1/3`.
/// Error at most `3 (w + 2)` units in the last place.
fn atanh_fixed(y: &BigRational, w: u64) -> BigInt {
    let yf = to_fixed(y, w);
    let y2 = round_shift(&yf * &yf, w);
    let mut pow = yf.clone();
    let mut sum = yf;
    let mut j: u64 = 1;
    loop {
        pow = round_shift(&pow * &y2, w);
        if pow.is_zero() {
            break;
        }
        sum += &pow / BigInt::from(2 * j + 1);
        j += 1;
    }
    sum
}

/// `log(1 - x)` for rational `x < 1`, absolute error at most `2^-prec`.
pub fn ln_one_minus(x: &BigRational, prec: u64) -> Result<BigRational> {
    let v = BigRational::one() - x;
    if !v.is_positive() {
        return Err(Error::Domain {
            x: rational_to_f64(x),
            domain: "x < 1",
        });
    }
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    // v = m * 2^-k with m in [2/3, 4/3)
    let mut k: i64 = v.denom().bits() as i64 - v.numer().bits() as i64;
    let two_thirds = BigRational::new(2.into(), 3.into());
    let four_thirds = BigRational::new(4.into(), 3.into());
    let scale = |k: i64| {
        if k >= 0 {
            &v * BigRational::from_integer(BigInt::one() << k as u64)
        } else {
            &v / BigRational::from_integer(BigInt::one() << (-k) as u64)
        }
    };
    let mut m = scale(k);
    while m < two_thirds {
        k += 1;
        m = scale(k);
    }
    while m >= four_thirds {
        k -= 1;
        m = scale(k);
    }
    let guard = 16 + bit_len(k.unsigned_abs() + 1) + bit_len(prec + 64);
    let w = prec + guard;
    let y = (&m - BigRational::one()) / (&m + BigRational::one());
    let ln_m = atanh_fixed(&y, w) << 1u32;
    let ln_fixed = if k == 0 {
        ln_m
    } else {
        let ln2 = atanh_fixed(&BigRational::new(1.into(), 3.into()), w) << 1u32;
        ln_m - ln2 * BigInt::from(k)
    };
    Ok(fixed_to_rational(round_shift(ln_fixed, guard), prec))
}

/// Number of terms after which the tail of `Σ x^ν/ν^s` is below `2^-bits`.
fn polylog_terms(s: u32, ax: f64, bits: u64, max_terms: u64) -> Result<u64> {
    let lx = ax.log2();
    let lgeo = -(1.0 - ax).log2();
    let target = -(bits as f64) - 1.0;
    let mut n: u64 = 1;
    loop {
        let np1 = (n + 1) as f64;
        let log_tail = np1 * lx - s as f64 * np1.log2() + lgeo;
        if log_tail <= target {
            return Ok(n);
        }
        if n >= max_terms {
            return Err(Error::NonConvergence {
                value: f64::NAN,
                tail_bound: log_tail.exp2(),
                terms: n,
            });
        }
        // geometric stride once far from the target keeps this cheap
        n += 1 + n / 64;
    }
}

/// `Li_s(x)` for rational `|x| < 1`, `s >= 1`, absolute error at most `2^-prec`.
pub fn polylog(s: u32, x: &BigRational, prec: u64, max_terms: u64) -> Result<BigRational> {
    let ax = rational_to_f64(&x.abs());
    if x.abs() >= BigRational::one() {
        return Err(Error::Domain {
            x: rational_to_f64(x),
            domain: "|x| < 1",
        });
    }
    if s == 0 {
        return Err(Error::InvalidArgument(
            "polylog order must be at least 1".into(),
        ));
    }
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    let terms = polylog_terms(s, ax.min(1.0 - f64::EPSILON), prec + 1, max_terms)?;
    // pow carries at most ~1/(1-|x|)^2 ulps, each division one more
    let amplification = (1.0 / (1.0 - ax)).powi(2).log2().ceil().max(0.0) as u64;
    let guard = 8 + bit_len(terms) + amplification;
    let w = prec + guard;
    let xf = to_fixed(x, w);
    let mut pow = xf.clone();
    let mut sum = BigInt::zero();
    for nu in 1..=terms {
        let den = BigInt::from(nu).pow(s);
        sum += &pow / &den;
        pow = round_shift(&pow * &xf, w);
        if pow.is_zero() {
            break;
        }
    }
    Ok(fixed_to_rational(round_shift(sum, guard), prec))
}

/// Bits needed for an absolute tolerance: `ceil(-log2 tol)`.
pub fn bits_for_tolerance(tol: f64) -> u64 {
    let b = -tol.log2();
    if b.is_finite() && b > 0.0 {
        b.ceil().to_u64().unwrap_or(1024)
    } else {
        1
    }
}
