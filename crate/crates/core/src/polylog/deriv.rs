use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, rat, BigRational, Polynomial, RationalFunction};

use super::expr::{BasisElement, SymbolicExpr};

type Memo = Mutex<HashMap<(u32, u32), Arc<SymbolicExpr>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `Li_s^{(n)}` as an exact expression, by `n` successive applications of
/// [`SymbolicExpr::derivative`] starting from `Li_s` (`-log(1-x)` for `s = 1`).
///
/// Results are memoized per `(s, n)`; a request resumes from the deepest
/// cached derivative of the same `s`.
pub fn polylog_deriv_expr(s: u32, n: u32) -> SymbolicExpr {
    polylog_deriv_shared(s, n).as_ref().clone()
}

pub(crate) fn polylog_deriv_shared(s: u32, n: u32) -> Arc<SymbolicExpr> {
    let (mut k, mut cur) = {
        let table = memo().lock().expect("memo poisoned");
        if let Some(hit) = table.get(&(s, n)) {
            return Arc::clone(hit);
        }
        (0..n)
            .rev()
            .find_map(|k| table.get(&(s, k)).map(|e| (k, Arc::clone(e))))
            .unwrap_or_else(|| (0, Arc::new(SymbolicExpr::polylog(s))))
    };
    while k < n {
        cur = Arc::new(cur.derivative());
        k += 1;
        memo()
            .lock()
            .expect("memo poisoned")
            .entry((s, k))
            .or_insert_with(|| Arc::clone(&cur));
    }
    cur
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "derivative order must be at least 1".into(),
        ));
    }
    Ok(())
}

/// `Li_1^{(n)}(x) = (n-1)! / (1-x)^n`.
pub fn li1_deriv_closed(n: u32) -> Result<SymbolicExpr> {
    check_order(n)?;
    let den = Polynomial::one_minus_x_pow(n);
    let coeff = RationalFunction::new(Polynomial::constant(factorial(n as u64 - 1)), den)?;
    Ok(SymbolicExpr::rational(coeff))
}

/// `Li_2^{(n)}(x) = (-1)^n (n-1)!/x^n log(1-x)
///               + (n-1)!/x^n Σ_{k=1}^{n-1} (-1)^{n-1-k} (1/k) (x/(1-x))^k`.
pub fn li2_deriv_closed(n: u32) -> Result<SymbolicExpr> {
    check_order(n)?;
    let fact = factorial(n as u64 - 1);
    let sign = |e: u32| if e.is_multiple_of(2) { int(1) } else { int(-1) };
    let prefactor = RationalFunction::inverse_x_pow(&fact, n as usize);

    let ratio = RationalFunction::new(Polynomial::x(), Polynomial::from_ints(&[1, -1]))?;
    let mut sum = RationalFunction::zero();
    let mut power = RationalFunction::one();
    for k in 1..n {
        power = power.mul(&ratio);
        let c: BigRational = sign(n - 1 - k) * rat(1, k as i64);
        sum = sum.add(&power.scale(&c));
    }

    let mut e = SymbolicExpr::term(BasisElement::Log, prefactor.scale(&sign(n)));
    e.add_term(BasisElement::One, prefactor.mul(&sum));
    Ok(e)
}
