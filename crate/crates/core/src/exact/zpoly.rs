//! Dense polynomials over the integers, used for gcd and canonical forms.
//! Index is degree; no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Gcd of all coefficients, non-negative; zero for the zero polynomial.
pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide out the content and make the leading coefficient positive.
pub(crate) fn primitive_part(mut p: ZPoly) -> ZPoly {
    trim(&mut p);
    let Some(lead) = p.last() else {
        return p;
    };
    let mut c = content(&p);
    if lead.is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for a in p.iter_mut() {
            *a = &*a / &c;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero): multiplies by `lc(b)`
/// once per elimination step.
fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r: ZPoly = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

fn low_order(p: &[BigInt]) -> usize {
    p.iter().take_while(|c| c.is_zero()).count()
}

/// Primitive gcd with positive leading coefficient. `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return primitive_part(b.to_vec());
    }
    if b.is_empty() {
        return primitive_part(a.to_vec());
    }
    // Peel off the common power of x first; denominators here are mostly
    // products of x^i and (1-x)^j.
    let shift = low_order(a).min(low_order(b));
    let mut u = primitive_part(a[low_order(a)..].to_vec());
    let mut v = primitive_part(b[low_order(b)..].to_vec());
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    let core = loop {
        if v.len() == 1 {
            break vec![BigInt::one()];
        }
        if u == v {
            break v;
        }
        let r = prem(&u, &v);
        if r.is_empty() {
            break v;
        }
        u = v;
        v = primitive_part(r);
    };
    let mut out = vec![BigInt::zero(); shift];
    out.extend(core);
    out
}

/// Exact quotient `a / b` over the integers. The caller guarantees `b | a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let mut r: ZPoly = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        debug_assert!(r.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &qc * bc;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
