//! The MKZ operator and the representations of its moments `(M_n e_r)(x)`.

mod bench;
mod compare;
mod eval;
mod operator;
mod second;
mod theorem;

pub use bench::{stability_bench, BenchRow, DEFAULT_FLAG_THRESHOLD};
pub use compare::{compare_grid, compare_representations, ComparisonReport};
pub use eval::{moment_eval, moment_eval_detailed, moment_eval_rational, Branch, MomentValue};
pub use operator::{mkz_apply_series, moment_series_oracle};
pub use second::{
    hyp2f1_1_2, second_moment_alkemade, second_moment_corollary, second_moment_corollary_float,
    second_moment_corollary_rational,
};
pub use theorem::{g_moment_expr, moment_theorem_expr, moment_theorem_value};

use crate::error::{Error, Result};

/// Moment order `r` (of `e_r(t) = t^r`) and operator index `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentSpec {
    r: u32,
    n: u32,
}

impl MomentSpec {
    pub fn new(r: u32, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "operator index n must be at least 1".into(),
            ));
        }
        Ok(Self { r, n })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

pub(crate) fn check_unit_interval(x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            x,
            domain: "0 <= x < 1",
        })
    }
}

pub(crate) fn check_open_unit_interval(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            x,
            domain: "0 < x < 1",
        })
    }
}
