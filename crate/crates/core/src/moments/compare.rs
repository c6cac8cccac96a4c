use rayon::prelude::*;

use crate::config::EvalConfig;
use crate::error::Result;
use crate::polylog::EvalTier;

use super::operator::moment_series_oracle;
use super::second::{second_moment_alkemade, second_moment_corollary_rational};
use super::theorem::{moment_theorem_shared, moment_theorem_value};
use super::{check_open_unit_interval, MomentSpec};

/// All applicable representations of one moment at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub spec: MomentSpec,
    pub x: f64,
    pub oracle: f64,
    pub theorem: f64,
    /// Only for `r = 2`.
    pub corollary: Option<f64>,
    /// Only for `r = 2`.
    pub alkemade: Option<f64>,
    pub max_pairwise_dev: f64,
    pub oracle_tail_bound: f64,
    pub theorem_tier: EvalTier,
}

impl ComparisonReport {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        [
            Some(self.oracle),
            Some(self.theorem),
            self.corollary,
            self.alkemade,
        ]
        .into_iter()
        .flatten()
    }
}

fn max_pairwise(values: &[f64]) -> f64 {
    let mut dev = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            dev = dev.max((a - b).abs());
        }
    }
    dev
}

/// Evaluate every representation at `x`; disagreement is reported, not raised.
pub fn compare_representations(
    spec: MomentSpec,
    x: f64,
    cfg: &EvalConfig,
) -> Result<ComparisonReport> {
    check_open_unit_interval(x)?;
    let oracle = moment_series_oracle(spec, x, cfg)?;
    let theorem = moment_theorem_value(spec, x, cfg)?;
    let (corollary, alkemade) = if spec.r() == 2 {
        let q = crate::exact::rational_from_f64(x)?;
        (
            Some(second_moment_corollary_rational(spec.n(), &q, cfg)?.value),
            Some(second_moment_alkemade(spec.n(), x, cfg)?),
        )
    } else {
        (None, None)
    };
    let mut report = ComparisonReport {
        spec,
        x,
        oracle: oracle.value,
        theorem: theorem.value,
        corollary,
        alkemade,
        max_pairwise_dev: 0.0,
        oracle_tail_bound: oracle.tail_bound,
        theorem_tier: theorem.tier,
    };
    report.max_pairwise_dev = max_pairwise(&report.values().collect::<Vec<_>>());
    Ok(report)
}

/// Reports for every `(r, n, x)`, ordered by `r`, then `n`, then the order of
/// `xs`. Points are evaluated in parallel.
pub fn compare_grid(
    rs: &[u32],
    ns: &[u32],
    xs: &[f64],
    cfg: &EvalConfig,
) -> Result<Vec<ComparisonReport>> {
    let specs = rs
        .iter()
        .flat_map(|&r| ns.iter().map(move |&n| MomentSpec::new(r, n)))
        .collect::<Result<Vec<_>>>()?;
    // build the closed forms once, in parallel, before fanning out over x
    specs.par_iter().for_each(|&s| {
        moment_theorem_shared(s);
    });
    let points: Vec<(MomentSpec, f64)> = specs
        .iter()
        .flat_map(|&s| xs.iter().map(move |&x| (s, x)))
        .collect();
    points
        .par_iter()
        .map(|&(s, x)| compare_representations(s, x, cfg))
        .collect()
}
