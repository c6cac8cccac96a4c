//! Polylogarithms: numeric series, the symbolic basis `{1, log(1-x), Li_2, Li_3, ...}`
//! with rational-function coefficients, exact n-th derivatives, and evaluation.
//!
//! Expressions are evaluated in one of two tiers. The float tier
//! ([`expr_eval`]) works in double precision with compensated arithmetic and
//! carries a rounding error estimate. The exact tier ([`expr_eval_exact`])
//! evaluates coefficients as exact rationals and the transcendental basis values
//! as rigorously bounded dyadic approximations, so it is immune to the
//! cancellation between terms that the closed forms exhibit near `x = 0`.
//! [`expr_eval_stable`] picks the float tier when its error estimate is within
//! tolerance and falls back to the exact tier otherwise.

mod deriv;
mod eval;
mod expr;
pub mod highprec;
mod series;

pub use deriv::{li1_deriv_closed, li2_deriv_closed, polylog_deriv_expr};
pub use eval::{
    expr_eval, expr_eval_estimate, expr_eval_exact, expr_eval_stable, EvalTier, TieredValue,
};
pub use expr::{BasisElement, SymbolicExpr};
pub use series::{ln_one_minus, polylog_partial_sum, polylog_series, SeriesResult};
