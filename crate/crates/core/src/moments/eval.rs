use num_rational::BigRational;
use num_traits::Signed;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::exact::rational_to_f64;
use crate::polylog::{expr_eval_exact, EvalTier};

use super::operator::moment_series_oracle;
use super::theorem::{moment_theorem_shared, moment_theorem_value};
use super::MomentSpec;

/// Which representation `moment_eval` used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Series,
    Theorem(EvalTier),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentValue {
    pub value: f64,
    pub branch: Branch,
    /// Tail bound (series) or error estimate (theorem).
    pub error: f64,
    pub terms_used: u64,
}

/// `(M_n e_r)(x)` through the better-conditioned representation.
pub fn moment_eval(spec: MomentSpec, x: f64, cfg: &EvalConfig) -> Result<f64> {
    moment_eval_detailed(spec, x, cfg).map(|v| v.value)
}

/// Below `cfg.series_branch_threshold` the closed form's `x^{-n}` poles
/// cancel badly, so the operator series is used; above it the closed form is
/// evaluated with the float/exact tier switch.
pub fn moment_eval_detailed(spec: MomentSpec, x: f64, cfg: &EvalConfig) -> Result<MomentValue> {
    cfg.validate()?;
    if x < 0.0 && x > -1.0 && cfg.allow_negative_x {
        return theorem(spec, x, cfg);
    }
    super::check_unit_interval(x)?;
    if x < cfg.series_branch_threshold {
        let s = moment_series_oracle(spec, x, cfg)?;
        return Ok(MomentValue {
            value: s.value,
            branch: Branch::Series,
            error: s.tail_bound,
            terms_used: s.terms_used,
        });
    }
    theorem(spec, x, cfg)
}

fn theorem(spec: MomentSpec, x: f64, cfg: &EvalConfig) -> Result<MomentValue> {
    let v = moment_theorem_value(spec, x, cfg)?;
    Ok(MomentValue {
        value: v.value,
        branch: Branch::Theorem(v.tier),
        error: v.error,
        terms_used: 0,
    })
}

/// Exact-point variant: for rational `x` above the series threshold the
/// closed form's rational parts are evaluated exactly at `x` itself rather
/// than at its nearest double.
pub fn moment_eval_rational(
    spec: MomentSpec,
    x: &BigRational,
    cfg: &EvalConfig,
) -> Result<MomentValue> {
    cfg.validate()?;
    let xf = rational_to_f64(x);
    let one = BigRational::from_integer(1.into());
    let negative_ok = cfg.allow_negative_x && x.is_negative() && x.abs() < one;
    if !negative_ok && (x.is_negative() || *x >= one) {
        return Err(Error::Domain {
            x: xf,
            domain: "0 <= x < 1",
        });
    }
    if !negative_ok && xf < cfg.series_branch_threshold {
        return moment_eval_detailed(spec, xf, cfg);
    }
    let v = expr_eval_exact(&moment_theorem_shared(spec), x, cfg)?;
    Ok(MomentValue {
        value: v.value,
        branch: Branch::Theorem(EvalTier::Exact),
        error: v.error,
        terms_used: 0,
    })
}
