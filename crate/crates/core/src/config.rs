use crate::error::{Error, Result};

/// Numeric evaluation settings shared by the series and closed-form evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Requested absolute tolerance.
    pub tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: u64,
    /// Below this `x` the moment evaluator uses the operator series instead of
    /// the closed form.
    pub series_branch_threshold: f64,
    /// Relative pole guard: a denominator is treated as vanishing when
    /// `|den(x)| <= pole_guard * Σ|b_k||x|^k`.
    pub pole_guard: f64,
    /// Permit closed-form evaluation on `(-1, 0)`.
    pub allow_negative_x: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_terms: 10_000_000,
            series_branch_threshold: 0.05,
            pole_guard: 1e-300,
            allow_negative_x: false,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if !(self.series_branch_threshold > 0.0 && self.series_branch_threshold < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "series branch threshold must lie in (0, 1), got {}",
                self.series_branch_threshold
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidArgument(
                "max_terms must be at least 1".into(),
            ));
        }
        if !(self.pole_guard >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "pole guard must be non-negative, got {}",
                self.pole_guard
            )));
        }
        Ok(())
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        EvalConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_threshold() {
        let cfg = EvalConfig {
            series_branch_threshold: 1.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = EvalConfig {
            tol: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
