//! Error-free transformations, Neumaier summation and compensated Horner.

const U: f64 = f64::EPSILON / 2.0;

fn gamma(k: usize) -> f64 {
    let ku = k as f64 * U;
    ku / (1.0 - ku)
}

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a * b = p + e` exactly.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
        self.abs += v.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Σ|v| over everything added.
    pub fn abs_sum(&self) -> f64 {
        self.abs
    }

    /// Rounding error bound for [`value`](Self::value).
    pub fn error_bound(&self, count: usize) -> f64 {
        U * self.value().abs() + gamma(count.max(1)).powi(2) * self.abs
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

/// Value of a compensated Horner evaluation with its rounding error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HornerEstimate {
    pub value: f64,
    pub error: f64,
    /// `Σ|a_k||x|^k`, the magnitude the cancellation is measured against.
    pub magnitude: f64,
}

/// Compensated Horner scheme (Graillat–Langlois–Louvet) on `coeffs` (index = degree).
///
/// Error bound: `u|p(x)| + γ(2d)² Σ|a_k||x|^k`.
pub fn compensated_horner(coeffs: &[f64], x: f64) -> HornerEstimate {
    let Some((&lead, rest)) = coeffs.split_last() else {
        return HornerEstimate {
            value: 0.0,
            error: 0.0,
            magnitude: 0.0,
        };
    };
    let ax = x.abs();
    let mut s = lead;
    let mut c = 0.0;
    let mut mag = lead.abs();
    for &a in rest.iter().rev() {
        let (p, pi) = two_prod(s, x);
        let (t, sigma) = two_sum(p, a);
        s = t;
        c = c * x + (pi + sigma);
        mag = mag * ax + a.abs();
    }
    let value = s + c;
    let d = rest.len();
    let magnitude = mag * (1.0 + gamma(2 * d + 1));
    HornerEstimate {
        value,
        error: U * value.abs() + gamma(2 * d).powi(2) * magnitude,
        magnitude,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_is_exact() {
        let (s, e) = two_sum(1.0, 1e-20);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-20);
    }

    #[test]
    fn neumaier_recovers_small_terms() {
        let vals = [1.0, 1e100, 1.0, -1e100];
        let s: NeumaierSum = vals.iter().copied().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn horner_ill_conditioned() {
        // (x - 1)^5 expanded, near its root: plain Horner is swamped by rounding
        let c = [-1.0, 5.0, -10.0, 10.0, -5.0, 1.0];
        let x = 1.0 + 1.0 / 1024.0;
        let exact = (1.0f64 / 1024.0).powi(5);
        let h = compensated_horner(&c, x);
        assert!((h.value - exact).abs() <= h.error);
        assert!((h.value - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn horner_trivial() {
        assert_eq!(compensated_horner(&[], 3.0).value, 0.0);
        assert_eq!(compensated_horner(&[1.0, 1.0], 0.5).value, 1.5);
    }
}
