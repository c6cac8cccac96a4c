use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::exact::{log2_magnitude, rational_from_f64, rational_to_f64, NeumaierSum};

use super::expr::{BasisElement, SymbolicExpr};
use super::highprec;
use super::series::{ln_one_minus, polylog_series};

const U: f64 = f64::EPSILON / 2.0;

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalTier {
    Float,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TieredValue {
    pub value: f64,
    /// Estimated (float tier) or rigorous (exact tier) absolute error.
    pub error: f64,
    pub tier: EvalTier,
}

fn check_domain(x: f64) -> Result<()> {
    if x.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            x,
            domain: "|x| < 1",
        })
    }
}

/// Double-precision value of `e` at `x`.
pub fn expr_eval(e: &SymbolicExpr, x: f64, cfg: &EvalConfig) -> Result<f64> {
    expr_eval_estimate(e, x, cfg).map(|v| v.value)
}

/// Double-precision value with an error estimate that accounts for rounding in
/// every coefficient and for cancellation between terms.
pub fn expr_eval_estimate(e: &SymbolicExpr, x: f64, cfg: &EvalConfig) -> Result<TieredValue> {
    check_domain(x)?;
    let coeffs = e
        .terms()
        .map(|(b, c)| Ok((*b, c.eval_estimate(x, cfg.pole_guard)?)))
        .collect::<Result<Vec<_>>>()?;
    let max_coeff = coeffs
        .iter()
        .map(|(_, c)| c.value.abs())
        .fold(0.0f64, f64::max);
    let li_tol = (cfg.tol / (coeffs.len().max(1) as f64 * max_coeff.max(1.0))).max(1e-300);
    let li_cfg = cfg.with_tol(li_tol);

    let mut sum = NeumaierSum::new();
    let mut err = 0.0;
    for (b, c) in &coeffs {
        let (bv, berr) = match b {
            BasisElement::One => (1.0, 0.0),
            BasisElement::Log => {
                let v = ln_one_minus(x);
                (v, 2.0 * U * v.abs())
            }
            BasisElement::Li(k) => {
                let r = polylog_series(*k, x, &li_cfg)?;
                (r.value, r.tail_bound + 4.0 * U * r.value.abs())
            }
        };
        let term = c.value * bv;
        sum.add(term);
        err += bv.abs() * c.error + c.value.abs() * berr + U * term.abs();
    }
    Ok(TieredValue {
        value: sum.value(),
        error: err + sum.error_bound(coeffs.len()),
        tier: EvalTier::Float,
    })
}

/// Value of `e` at the rational point `x`: coefficients exactly, basis values
/// to an absolute error small enough that the result is within
/// `2^-20 * cfg.tol` before the final rounding to double.
pub fn expr_eval_exact(e: &SymbolicExpr, x: &BigRational, cfg: &EvalConfig) -> Result<TieredValue> {
    let xf = rational_to_f64(x);
    if x.abs() >= BigRational::from_integer(1.into()) {
        return Err(Error::Domain {
            x: xf,
            domain: "|x| < 1",
        });
    }
    let coeffs = e
        .terms()
        .map(|(b, c)| Ok((*b, c.eval_exact(x)?)))
        .collect::<Result<Vec<_>>>()?;
    let target = highprec::bits_for_tolerance(cfg.tol) + 20;
    let top = coeffs
        .iter()
        .map(|(_, c)| log2_magnitude(c) + 1)
        .max()
        .unwrap_or(0)
        .max(0) as u64;
    let prec = target + top + 64 - (coeffs.len() as u64).leading_zeros() as u64 + 2;

    let mut acc = BigRational::zero();
    for (b, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        let bv = match b {
            BasisElement::One => BigRational::from_integer(1.into()),
            BasisElement::Log => highprec::ln_one_minus(x, prec)?,
            BasisElement::Li(k) => highprec::polylog(k, x, prec, cfg.max_terms)?,
        };
        acc += c * bv;
    }
    let value = rational_to_f64(&acc);
    Ok(TieredValue {
        value,
        error: (-(target as f64)).exp2() + U * value.abs(),
        tier: EvalTier::Exact,
    })
}

/// Float tier when its error estimate is within half the tolerance, exact tier
/// at the (exactly representable) point `x` otherwise.
pub fn expr_eval_stable(e: &SymbolicExpr, x: f64, cfg: &EvalConfig) -> Result<TieredValue> {
    let est = expr_eval_estimate(e, x, cfg)?;
    if est.error <= 0.5 * cfg.tol && est.value.is_finite() {
        return Ok(est);
    }
    expr_eval_exact(e, &rational_from_f64(x)?, cfg)
}
