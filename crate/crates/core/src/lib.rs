//! Moments of the Meyer-König–Zeller (MKZ) operators
//!
//! ```text
//! (M_n f)(x) = (1-x)^{n+1} Σ_{ν≥0} C(ν+n, ν) f(ν/(ν+n)) x^ν,   0 ≤ x < 1
//! ```
//!
//! The crate computes `(M_n e_r)(x)` for the monomials `e_r(t) = t^r` through
//! independent routes that are checked against each other:
//!
//! * a truncated operator series with a rigorous tail bound ([`moments::moment_series_oracle`]),
//! * an exact symbolic closed form built from n-th derivatives of polylogarithms
//!   ([`moments::moment_theorem_expr`]),
//! * the elementary second-moment formula ([`moments::second_moment_corollary`]),
//! * the hypergeometric second-moment formula ([`moments::second_moment_alkemade`]).
//!
//! Symbolic coefficients live in [`exact`]: exact rationals, dense polynomials and
//! canonical rational functions. [`polylog`] holds the closed transcendental basis
//! `{1, log(1-x), Li_2, Li_3, ...}`, its differentiation rules and the numeric
//! evaluation tiers.

// `!(a <= b)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod exact;
pub mod moments;
pub mod polylog;

pub use config::EvalConfig;
pub use error::{Error, Result};
