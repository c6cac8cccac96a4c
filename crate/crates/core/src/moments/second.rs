//! Second-moment representations: the elementary closed form and the
//! hypergeometric form `x^2 + x(1-x)^2/(n+1) 2F1(1, 2; n+2; x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::exact::{log2_magnitude, rational_from_f64, rational_to_f64, NeumaierSum};
use crate::polylog::{highprec, ln_one_minus, EvalTier, SeriesResult, TieredValue};

use super::{check_open_unit_interval, check_unit_interval};

const U: f64 = f64::EPSILON / 2.0;

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "operator index n must be at least 1".into(),
        ));
    }
    Ok(())
}

/// ```text
/// (M_n e_2)(x) = (-1)^n n (1-x)^{n+1} / x^n log(1-x)
///              + 2x - 1 + n (1-x) Σ_{k=1}^{n-1} (-1)^{n-1-k} (1/k) ((1-x)/x)^{n-k}
/// ```
/// evaluated with the rational part exact at the double `x` and `log(1-x)`
/// to matching precision.
pub fn second_moment_corollary(n: u32, x: f64) -> Result<f64> {
    check_open_unit_interval(x)?;
    second_moment_corollary_rational(n, &rational_from_f64(x)?, &EvalConfig::default())
        .map(|v| v.value)
}

/// The elementary second-moment formula at a rational point.
pub fn second_moment_corollary_rational(
    n: u32,
    x: &BigRational,
    cfg: &EvalConfig,
) -> Result<TieredValue> {
    check_n(n)?;
    let xf = rational_to_f64(x);
    if !(x.is_positive() && *x < BigRational::one()) {
        return Err(Error::Domain {
            x: xf,
            domain: "0 < x < 1",
        });
    }
    let one = BigRational::one();
    let nq = BigRational::from_integer(BigInt::from(n));
    let omx = &one - x;
    let ratio = &omx / x;

    let mut log_coeff =
        &nq * num_traits::pow(omx.clone(), n as usize + 1) / num_traits::pow(x.clone(), n as usize);
    if n % 2 == 1 {
        log_coeff = -log_coeff;
    }
    let mut sum = BigRational::zero();
    for k in 1..n {
        let mut t = num_traits::pow(ratio.clone(), (n - k) as usize)
            / BigRational::from_integer(BigInt::from(k));
        if (n - 1 - k) % 2 == 1 {
            t = -t;
        }
        sum += t;
    }
    let rational_part = BigRational::from_integer(BigInt::from(2)) * x - &one + &nq * &omx * sum;

    let target = highprec::bits_for_tolerance(cfg.tol) + 20;
    let prec = target + (log2_magnitude(&log_coeff) + 2).max(0) as u64;
    let log = highprec::ln_one_minus(x, prec)?;
    let value = rational_to_f64(&(log_coeff * log + rational_part));
    Ok(TieredValue {
        value,
        error: (-(target as f64)).exp2() + U * value.abs(),
        tier: EvalTier::Exact,
    })
}

/// The same formula in double precision (compensated summation), with an
/// error estimate. Loses accuracy to cancellation for small `x` and large `n`.
pub fn second_moment_corollary_float(n: u32, x: f64) -> Result<TieredValue> {
    check_n(n)?;
    check_open_unit_interval(x)?;
    let nf = n as f64;
    let omx = 1.0 - x;
    let ratio = omx / x;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut terms = NeumaierSum::new();
    let mut err = 0.0;
    let log_term = sign * nf * omx.powi(n as i32 + 1) / x.powi(n as i32) * ln_one_minus(x);
    terms.add(log_term);
    err += (2 * n as usize + 6) as f64 * U * log_term.abs();
    terms.add(2.0 * x);
    terms.add(-1.0);
    for k in 1..n {
        let s = if (n - 1 - k).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        let t = s * nf * omx * ratio.powi((n - k) as i32) / k as f64;
        terms.add(t);
        err += (2 * n as usize + 6) as f64 * U * t.abs();
    }
    let value = terms.value();
    Ok(TieredValue {
        value,
        error: err + terms.error_bound(n as usize + 2),
        tier: EvalTier::Float,
    })
}

/// `2F1(1, 2; n+2; x) = (n+1)! Σ_{k≥0} (k+1)!/(n+k+1)! x^k`.
///
/// Consecutive terms have ratio `x (k+2)/(n+k+2)`, increasing in `k` towards
/// `x`, so after the last included term `t_K` the remainder is at most
/// `|t_{K+1}| / (1 - |x|)`.
pub fn hyp2f1_1_2(n: u32, x: f64, cfg: &EvalConfig) -> Result<SeriesResult> {
    check_n(n)?;
    if !(x.abs() < 1.0) {
        return Err(Error::Domain {
            x,
            domain: "|x| < 1",
        });
    }
    let nf = n as f64;
    let ax = x.abs();
    let mut sum = NeumaierSum::new();
    let mut t = 1.0;
    let mut k: u64 = 0;
    loop {
        sum.add(t);
        let kf = k as f64;
        t *= x * (kf + 2.0) / (nf + kf + 2.0);
        k += 1;
        let tail = t.abs() / (1.0 - ax);
        if tail <= cfg.tol {
            return Ok(SeriesResult {
                value: sum.value(),
                tail_bound: tail,
                terms_used: k,
            });
        }
        if k >= cfg.max_terms {
            return Err(Error::NonConvergence {
                value: sum.value(),
                tail_bound: tail,
                terms: k,
            });
        }
    }
}

/// `(M_n e_2)(x) = x^2 + x(1-x)^2/(n+1) 2F1(1, 2; n+2; x)`.
pub fn second_moment_alkemade(n: u32, x: f64, cfg: &EvalConfig) -> Result<f64> {
    check_unit_interval(x)?;
    let f = hyp2f1_1_2(n, x, cfg)?;
    Ok(x * x + x * (1.0 - x).powi(2) / (n as f64 + 1.0) * f.value)
}
