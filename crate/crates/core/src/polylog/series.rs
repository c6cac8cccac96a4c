use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::exact::NeumaierSum;

/// Truncated series value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Rigorous bound on the truncation error.
    pub tail_bound: f64,
    pub terms_used: u64,
}

/// `log(1 - x)` without cancellation for small `|x|`.
pub fn ln_one_minus(x: f64) -> f64 {
    (-x).ln_1p()
}

/// `Li_s(x) = Σ_{ν≥1} x^ν / ν^s` for `|x| < 1`.
///
/// Stops as soon as `|x|^{N+1} / ((N+1)^s (1-|x|)) <= cfg.tol`, which bounds
/// the remaining tail by geometric domination.
pub fn polylog_series(s: u32, x: f64, cfg: &EvalConfig) -> Result<SeriesResult> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain {
            x,
            domain: "|x| < 1",
        });
    }
    if x == 0.0 {
        return Ok(SeriesResult {
            value: 0.0,
            tail_bound: 0.0,
            terms_used: 0,
        });
    }
    let ax = x.abs();
    let mut sum = NeumaierSum::new();
    let mut pow = 1.0;
    let mut nu: u64 = 0;
    loop {
        nu += 1;
        pow *= x;
        sum.add(pow / (nu as f64).powi(s as i32));
        let tail = pow.abs() * ax / ((nu + 1) as f64).powi(s as i32) / (1.0 - ax);
        if tail <= cfg.tol || pow == 0.0 {
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
    }
}

/// The first `terms` partial sum of `Li_s(x)`.
pub fn polylog_partial_sum(s: u32, x: f64, terms: u64) -> f64 {
    let mut sum = NeumaierSum::new();
    let mut pow = 1.0;
    for nu in 1..=terms {
        pow *= x;
        sum.add(pow / (nu as f64).powi(s as i32));
    }
    sum.value()
}
