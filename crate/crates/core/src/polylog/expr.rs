use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Polynomial, RationalFunction};

/// Element of the transcendental basis. The derived order is the canonical
/// rendering order: `One`, `Log`, `Li(2)`, `Li(3)`, ...
///
/// `Log` stands for `log(1-x)`; the weight-one polylogarithm is folded into it
/// via `Li_1(x) = -log(1-x)`, so `Li(k)` is only valid for `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisElement {
    One,
    Log,
    Li(u32),
}

impl BasisElement {
    pub fn is_valid(self) -> bool {
        !matches!(self, BasisElement::Li(k) if k < 2)
    }
}

/// Finite linear combination of basis elements with rational-function
/// coefficients. Zero coefficients are never stored, so structural equality
/// is equality of the represented functions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymbolicExpr {
    terms: BTreeMap<BasisElement, RationalFunction>,
}

impl SymbolicExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(RationalFunction::one())
    }

    /// A purely rational expression (coefficient of `One`).
    pub fn rational(r: RationalFunction) -> Self {
        Self::term(BasisElement::One, r)
    }

    /// `log(1 - x)`
    pub fn log() -> Self {
        Self::term(BasisElement::Log, RationalFunction::one())
    }

    /// `Li_s(x)` in the basis: `s = 0` is `x/(1-x)`, `s = 1` is `-log(1-x)`.
    pub fn polylog(s: u32) -> Self {
        match s {
            0 => Self::rational(
                RationalFunction::new(Polynomial::x(), Polynomial::from_ints(&[1, -1]))
                    .expect("nonzero denominator"),
            ),
            1 => Self::term(BasisElement::Log, RationalFunction::one().neg()),
            k => Self::term(BasisElement::Li(k), RationalFunction::one()),
        }
    }

    /// Single term `coeff * basis`.
    ///
    /// # Panics
    /// On `Li(k)` with `k < 2`.
    pub fn term(basis: BasisElement, coeff: RationalFunction) -> Self {
        let mut e = Self::zero();
        e.add_term(basis, coeff);
        e
    }

    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisElement, RationalFunction)>,
    {
        let mut e = Self::zero();
        for (b, c) in terms {
            if !b.is_valid() {
                return Err(Error::InvalidArgument(format!(
                    "{b:?} is not a basis element"
                )));
            }
            e.add_term(b, c);
        }
        Ok(e)
    }

    pub fn add_term(&mut self, basis: BasisElement, coeff: RationalFunction) {
        assert!(basis.is_valid(), "{basis:?} is not a basis element");
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&basis) {
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(basis, sum);
                }
            }
            None => {
                self.terms.insert(basis, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, basis: BasisElement) -> Option<&RationalFunction> {
        self.terms.get(&basis)
    }

    pub fn basis(&self) -> impl Iterator<Item = BasisElement> + '_ {
        self.terms.keys().copied()
    }

    /// Number of nonzero terms; emptiness is `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        self.map_coefficients(|c| c.scale(k))
    }

    pub fn mul_rational(&self, r: &RationalFunction) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        self.map_coefficients(|c| c.mul(r))
    }

    fn map_coefficients(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Exact derivative. With `R` a rational coefficient:
    ///
    /// ```text
    /// d(R)            = R'
    /// d(R log(1-x))   = R' log(1-x) - R/(1-x)
    /// d(R Li_2)       = R' Li_2 - (R/x) log(1-x)
    /// d(R Li_k)       = R' Li_k + (R/x) Li_{k-1}      k >= 3
    /// ```
    pub fn derivative(&self) -> Self {
        let one_minus_x = RationalFunction::from_poly(Polynomial::from_ints(&[1, -1]));
        let x = RationalFunction::x();
        let mut out = Self::zero();
        for (b, r) in &self.terms {
            out.add_term(*b, r.derivative());
            match *b {
                BasisElement::One => {}
                BasisElement::Log => {
                    out.add_term(
                        BasisElement::One,
                        r.div(&one_minus_x).expect("nonzero").neg(),
                    );
                }
                BasisElement::Li(2) => {
                    out.add_term(BasisElement::Log, r.div(&x).expect("nonzero").neg());
                }
                BasisElement::Li(k) => {
                    out.add_term(BasisElement::Li(k - 1), r.div(&x).expect("nonzero"));
                }
            }
        }
        out
    }

    /// Highest `k` with `Li(k)` present.
    pub fn max_polylog_order(&self) -> Option<u32> {
        self.terms.keys().rev().find_map(|b| match b {
            BasisElement::Li(k) => Some(*k),
            _ => None,
        })
    }

    /// LaTeX rendering in canonical term order.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts = self.terms.iter().map(|(b, c)| {
            let basis = match b {
                BasisElement::One => return c.to_latex(),
                BasisElement::Log => "\\log(1-x)".to_string(),
                BasisElement::Li(k) => format!("\\mathrm{{Li}}_{{{k}}}(x)"),
            };
            let one = RationalFunction::one();
            if *c == one {
                basis
            } else if *c == one.neg() {
                format!("-{basis}")
            } else if c.is_polynomial() && c.num().term_count() > 1 {
                format!("\\left({}\\right){basis}", c.to_latex())
            } else {
                format!("{}{basis}", c.to_latex())
            }
        });
        join_signed(parts)
    }
}

fn join_signed(parts: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for p in parts {
        if out.is_empty() {
            out = p;
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

/// Plain rendering in canonical term order, e.g. `x - 1 + (2/x)*log(1-x)`.
impl fmt::Display for SymbolicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts = self.terms.iter().map(|(b, c)| {
            let basis = match b {
                BasisElement::One => return c.to_string(),
                BasisElement::Log => "log(1-x)".to_string(),
                BasisElement::Li(k) => format!("Li_{k}(x)"),
            };
            let one = RationalFunction::one();
            if *c == one {
                basis
            } else if *c == one.neg() {
                format!("-{basis}")
            } else if c.needs_parens() {
                format!("({c})*{basis}")
            } else {
                format!("{c}*{basis}")
            }
        });
        f.write_str(&join_signed(parts))
    }
}
