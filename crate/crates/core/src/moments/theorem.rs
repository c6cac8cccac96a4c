use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::config::EvalConfig;
use crate::error::Result;
use crate::exact::{binomial, factorial, Polynomial, RationalFunction};
use crate::polylog::{expr_eval_stable, polylog_deriv_expr, SymbolicExpr, TieredValue};

use super::MomentSpec;

/// `(1-x)^{n+1} / n!` times `k`.
fn prefactor(n: u32, k: &BigRational) -> RationalFunction {
    let p = Polynomial::one_minus_x_pow(n + 1).scale(&(k / factorial(n as u64)));
    RationalFunction::from_poly(p)
}

/// `(M_n g_s)(x)` with `g_s(t) = (1-t)^s`:
/// `(n^s / n!) (1-x)^{n+1} Li_s^{(n)}(x)`, and the constant 1 for `s = 0`.
pub fn g_moment_expr(s: u32, n: u32) -> SymbolicExpr {
    if s == 0 {
        return SymbolicExpr::one();
    }
    let ns = BigRational::from_integer(BigInt::from(n).pow(s));
    polylog_deriv_expr(s, n).mul_rational(&prefactor(n, &ns))
}

type Memo = Mutex<HashMap<MomentSpec, Arc<SymbolicExpr>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `(M_n e_r)(x) = 1 + (1/n!) (1-x)^{n+1} Σ_{s=1}^{r} (-1)^s C(r,s) n^s Li_s^{(n)}(x)`
/// as an exact expression. Memoized per `(r, n)`.
pub fn moment_theorem_expr(spec: MomentSpec) -> SymbolicExpr {
    moment_theorem_shared(spec).as_ref().clone()
}

pub(crate) fn moment_theorem_shared(spec: MomentSpec) -> Arc<SymbolicExpr> {
    if let Some(hit) = memo().lock().expect("memo poisoned").get(&spec) {
        return Arc::clone(hit);
    }
    let (r, n) = (spec.r(), spec.n());
    let mut inner = SymbolicExpr::zero();
    for s in 1..=r {
        let mut c =
            binomial(r as u64, s as u64) * BigRational::from_integer(BigInt::from(n).pow(s));
        if s % 2 == 1 {
            c = -c;
        }
        inner = inner.add(&polylog_deriv_expr(s, n).scale(&c));
    }
    let one = BigRational::from_integer(1.into());
    let e = Arc::new(SymbolicExpr::one().add(&inner.mul_rational(&prefactor(n, &one))));
    memo()
        .lock()
        .expect("memo poisoned")
        .entry(spec)
        .or_insert_with(|| Arc::clone(&e));
    e
}

/// The closed form evaluated at `x` (float tier, or exact tier when the
/// float estimate exceeds the tolerance).
pub fn moment_theorem_value(spec: MomentSpec, x: f64, cfg: &EvalConfig) -> Result<TieredValue> {
    expr_eval_stable(&moment_theorem_shared(spec), x, cfg)
}
