use std::time::Instant;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::exact::rational_from_f64;
use crate::polylog::{expr_eval_estimate, expr_eval_exact};

use super::eval::moment_eval;
use super::operator::moment_series_oracle;
use super::second::{second_moment_alkemade, second_moment_corollary_float};
use super::theorem::moment_theorem_shared;
use super::MomentSpec;

/// Float-tier closed-form deviations above this are flagged.
pub const DEFAULT_FLAG_THRESHOLD: f64 = 1e-6;

/// Timing and accuracy of each representation at one stress point, measured
/// against the closed form evaluated in the exact tier.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub r: u32,
    pub n: u32,
    pub x: f64,
    pub reference: f64,
    pub oracle_dev: f64,
    pub oracle_us: f64,
    /// The closed form in plain double precision (no exact-tier fallback).
    pub theorem_float_dev: f64,
    pub theorem_float_us: f64,
    /// The branch-selecting evaluator.
    pub moment_eval_dev: f64,
    pub moment_eval_us: f64,
    /// Double-precision elementary formula, `r = 2` only.
    pub corollary_float_dev: Option<f64>,
    pub corollary_float_us: Option<f64>,
    /// `r = 2` only.
    pub alkemade_dev: Option<f64>,
    pub alkemade_us: Option<f64>,
    pub flagged: bool,
}

fn timed<T>(repeats: u32, mut f: impl FnMut() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let mut out = f()?;
    for _ in 1..repeats {
        out = f()?;
    }
    let us = start.elapsed().as_secs_f64() * 1e6 / repeats as f64;
    Ok((out, us))
}

fn dev(v: Result<f64>, reference: f64) -> f64 {
    match v {
        Ok(v) if v.is_finite() => (v - reference).abs(),
        _ => f64::INFINITY,
    }
}

/// One row per `(n, x)` for `n = 1..=n_max` and `x` in `xs`.
pub fn stability_bench(
    r: u32,
    n_max: u32,
    xs: &[f64],
    repeats: u32,
    flag_threshold: f64,
    cfg: &EvalConfig,
) -> Result<Vec<BenchRow>> {
    if repeats == 0 {
        return Err(Error::InvalidArgument("repeats must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let spec = MomentSpec::new(r, n)?;
        let expr = moment_theorem_shared(spec);
        for &x in xs {
            super::check_open_unit_interval(x)?;
            let reference = expr_eval_exact(&expr, &rational_from_f64(x)?, cfg)?.value;

            let (oracle, oracle_us) = timed(repeats, || {
                moment_series_oracle(spec, x, cfg).map(|s| s.value)
            })?;
            let float = timed(repeats, || {
                expr_eval_estimate(&expr, x, cfg).map(|v| v.value)
            });
            let (theorem_float, theorem_float_us) = match float {
                Ok((v, us)) => (Ok(v), us),
                Err(e) => (Err(e), f64::NAN),
            };
            let (me, moment_eval_us) = timed(repeats, || moment_eval(spec, x, cfg))?;

            let (corollary_float_dev, corollary_float_us, alkemade_dev, alkemade_us) = if r == 2 {
                let (c, cu) = timed(repeats, || {
                    second_moment_corollary_float(n, x).map(|v| v.value)
                })?;
                let (a, au) = timed(repeats, || second_moment_alkemade(n, x, cfg))?;
                (
                    Some(dev(Ok(c), reference)),
                    Some(cu),
                    Some(dev(Ok(a), reference)),
                    Some(au),
                )
            } else {
                (None, None, None, None)
            };

            let theorem_float_dev = dev(theorem_float, reference);
            rows.push(BenchRow {
                r,
                n,
                x,
                reference,
                oracle_dev: dev(Ok(oracle), reference),
                oracle_us,
                theorem_float_dev,
                theorem_float_us,
                moment_eval_dev: dev(Ok(me), reference),
                moment_eval_us,
                corollary_float_dev,
                corollary_float_us,
                alkemade_dev,
                alkemade_us,
                flagged: !(theorem_float_dev <= flag_threshold),
            });
        }
    }
    Ok(rows)
}
