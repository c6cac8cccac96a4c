use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::exact::NeumaierSum;
use crate::polylog::SeriesResult;

use super::{check_unit_interval, MomentSpec};

const RESCALE_BITS: i32 = 256;

/// `(M_n f)(x) = (1-x)^{n+1} Σ_{ν≥0} C(ν+n, ν) f(ν/(ν+n)) x^ν`, truncated.
///
/// `bound` must satisfy `|f| <= bound` on `[0, 1)`. The weights
/// `w_ν = C(ν+n, ν) x^ν (1-x)^{n+1}` obey `w_{ν+1}/w_ν = x (ν+n+1)/(ν+1)`,
/// which decreases in `ν`; once it drops below one at some `q`, the remainder
/// is bounded by `bound * w_{ν+1} / (1 - q)`.
pub fn mkz_apply_series<F>(
    f: F,
    bound: f64,
    n: u32,
    x: f64,
    cfg: &EvalConfig,
) -> Result<SeriesResult>
where
    F: Fn(f64) -> f64,
{
    check_unit_interval(x)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "operator index n must be at least 1".into(),
        ));
    }
    if x == 0.0 {
        return Ok(SeriesResult {
            value: f(0.0),
            tail_bound: 0.0,
            terms_used: 1,
        });
    }
    let nf = n as f64;
    // weight = w * 2^exp; exp < 0 only while the leading weights underflow
    let (mut w, mut exp) = {
        let direct = (1.0 - x).powi(n as i32 + 1);
        if direct.is_normal() {
            (direct, 0i32)
        } else {
            let l = (nf + 1.0) * (1.0 - x).log2();
            let e = l.floor();
            ((l - e).exp2(), e as i32)
        }
    };
    let mut unit = 2f64.powi(exp);
    let mut sum = NeumaierSum::new();
    let mut nu: u64 = 0;
    loop {
        let nuf = nu as f64;
        sum.add(f(nuf / (nuf + nf)) * w * unit);
        w *= x * (nuf + nf + 1.0) / (nuf + 1.0);
        if exp < 0 && w > 2f64.powi(RESCALE_BITS) {
            let step = RESCALE_BITS.min(-exp);
            w *= 2f64.powi(-step);
            exp += step;
            unit = 2f64.powi(exp);
        }
        nu += 1;
        // w now holds w_ν for the new ν; ratios from here on are at most q
        let q = x * (nu as f64 + nf + 1.0) / (nu as f64 + 1.0);
        if q < 1.0 {
            let tail = bound * w * unit / (1.0 - q);
            if tail <= cfg.tol {
                return Ok(SeriesResult {
                    value: sum.value(),
                    tail_bound: tail,
                    terms_used: nu,
                });
            }
            if nu >= cfg.max_terms {
                return Err(Error::NonConvergence {
                    value: sum.value(),
                    tail_bound: tail,
                    terms: nu,
                });
            }
        } else if nu >= cfg.max_terms {
            return Err(Error::NonConvergence {
                value: sum.value(),
                tail_bound: f64::INFINITY,
                terms: nu,
            });
        }
    }
}

/// `(M_n e_r)(x)` by the operator series. `r = 0` returns exactly 1.
pub fn moment_series_oracle(spec: MomentSpec, x: f64, cfg: &EvalConfig) -> Result<SeriesResult> {
    check_unit_interval(x)?;
    if spec.r() == 0 {
        return Ok(SeriesResult {
            value: 1.0,
            tail_bound: 0.0,
            terms_used: 0,
        });
    }
    let r = spec.r() as i32;
    mkz_apply_series(|t| t.powi(r), 1.0, spec.n(), x, cfg)
}
