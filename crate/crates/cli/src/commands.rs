use std::io::Write;

use clap::Args;
use mkz_core::moments::{
    compare_grid, moment_eval_detailed, moment_eval_rational, moment_theorem_expr, stability_bench,
    BenchRow, Branch, ComparisonReport, MomentSpec, MomentValue, DEFAULT_FLAG_THRESHOLD,
};
use mkz_core::EvalConfig;

use crate::format::fmt_g;
use crate::input::{parse_point, parse_u32_set, parse_x_grid, Point};
use crate::{Failure, OutputFormat};

const HUMAN_DIGITS: usize = 12;
const CSV_DIGITS: usize = 17;

pub const COMPARE_HEADER: &str = "r,n,x,oracle,theorem,corollary,alkemade,max_dev,tail_bound";
pub const BENCH_HEADER: &str = "r,n,x,reference,oracle_dev,oracle_us,theorem_float_dev,theorem_float_us,\
moment_eval_dev,moment_eval_us,corollary_float_dev,corollary_float_us,alkemade_dev,alkemade_us,flagged";

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    /// Decimal, or an exact fraction `p/q`
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Significant digits printed
    #[arg(long, default_value_t = HUMAN_DIGITS)]
    digits: usize,
    /// Report the branch taken and its error bound on stderr
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
pub struct ExprArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Moment orders: `a..b` inclusive, or a comma list
    #[arg(long, default_value = "0..6")]
    r_range: String,
    /// Operator indices: `a..b` inclusive, or a comma list
    #[arg(long, default_value = "1..20")]
    n_range: String,
    /// Points: `start:step:stop` inclusive, or a comma list
    #[arg(long, default_value = "0.05:0.05:0.95")]
    x_grid: String,
    /// Largest pairwise deviation tolerated before exiting with status 1
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    dev_tol: f64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 20)]
    n_max: u32,
    /// Third stress point, after 0.9 and 0.99
    #[arg(long, default_value_t = 0.999, allow_negative_numbers = true)]
    x_near_one: f64,
    /// Replace the stress points entirely (comma list)
    #[arg(long)]
    x_points: Option<String>,
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Timing repetitions per cell
    #[arg(long, default_value_t = 3)]
    repeats: u32,
    /// Deviation above which the double-precision closed form is flagged
    #[arg(long, default_value_t = DEFAULT_FLAG_THRESHOLD)]
    flag_threshold: f64,
    /// Largest deviation of the branch-selected evaluator tolerated before
    /// exiting with status 1
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    dev_tol: f64,
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

/// NaN deviations count as exceeding.
fn exceeds(dev: f64, tol: f64) -> bool {
    dev.is_nan() || dev > tol
}

fn check_dev_tol(tol: f64) -> Result<(), Failure> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Failure::Usage(format!(
            "--dev-tol must be non-negative, got {tol}"
        )));
    }
    Ok(())
}

fn spec(r: u32, n: u32) -> Result<MomentSpec, Failure> {
    MomentSpec::new(r, n).map_err(Failure::from)
}

fn reject_format(
    format: Option<OutputFormat>,
    allowed: &[OutputFormat],
    cmd: &str,
) -> Result<(), Failure> {
    match format {
        Some(f) if !allowed.contains(&f) => Err(Failure::Usage(format!(
            "--format {} is not supported by '{cmd}'",
            format!("{f:?}").to_lowercase()
        ))),
        _ => Ok(()),
    }
}

pub fn eval(
    a: &EvalArgs,
    format: Option<OutputFormat>,
    cfg: &EvalConfig,
    out: &mut impl Write,
) -> Result<(), Failure> {
    reject_format(format, &[OutputFormat::Plain], "eval")?;
    let spec = spec(a.r, a.n)?;
    let point = parse_point(&a.x).map_err(Failure::Usage)?;
    let v: MomentValue = match &point {
        Point::Decimal(x) => moment_eval_detailed(spec, *x, cfg)?,
        Point::Fraction(q) => moment_eval_rational(spec, q, cfg)?,
    };
    writeln!(out, "{}", fmt_g(v.value, a.digits)).map_err(io)?;
    if a.verbose {
        let branch = match v.branch {
            Branch::Series => format!("series ({} terms)", v.terms_used),
            Branch::Theorem(tier) => {
                format!("closed form ({} tier)", format!("{tier:?}").to_lowercase())
            }
        };
        eprintln!("branch: {branch}");
        eprintln!("error bound: {:e}", v.error);
    }
    Ok(())
}

pub fn expr(
    a: &ExprArgs,
    format: Option<OutputFormat>,
    out: &mut impl Write,
) -> Result<(), Failure> {
    reject_format(format, &[OutputFormat::Plain, OutputFormat::Latex], "expr")?;
    let e = moment_theorem_expr(spec(a.r, a.n)?);
    let text = match format {
        Some(OutputFormat::Latex) => e.to_latex(),
        _ => e.to_string(),
    };
    writeln!(out, "{text}").map_err(io)
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| fmt_g(v, CSV_DIGITS)).unwrap_or_default()
}

pub fn compare_row(rep: &ComparisonReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        rep.spec.r(),
        rep.spec.n(),
        fmt_g(rep.x, CSV_DIGITS),
        fmt_g(rep.oracle, CSV_DIGITS),
        fmt_g(rep.theorem, CSV_DIGITS),
        opt(rep.corollary),
        opt(rep.alkemade),
        fmt_g(rep.max_pairwise_dev, CSV_DIGITS),
        fmt_g(rep.oracle_tail_bound, CSV_DIGITS),
    )
}

pub fn compare(
    a: &CompareArgs,
    format: Option<OutputFormat>,
    cfg: &EvalConfig,
    out: &mut impl Write,
) -> Result<(), Failure> {
    reject_format(format, &[OutputFormat::Csv], "compare")?;
    let mut rs = parse_u32_set(&a.r_range).map_err(Failure::Usage)?;
    let mut ns = parse_u32_set(&a.n_range).map_err(Failure::Usage)?;
    let mut xs = parse_x_grid(&a.x_grid).map_err(Failure::Usage)?;
    // rows come out sorted by (r, n, x) whatever order the lists were given in
    rs.sort_unstable();
    ns.sort_unstable();
    xs.sort_by(f64::total_cmp);
    check_dev_tol(a.dev_tol)?;
    for &n in &ns {
        spec(0, n)?;
    }
    let reports = compare_grid(&rs, &ns, &xs, cfg)?;
    writeln!(out, "{COMPARE_HEADER}").map_err(io)?;
    for rep in &reports {
        writeln!(out, "{}", compare_row(rep)).map_err(io)?;
    }
    out.flush().map_err(io)?;
    let bad: Vec<&ComparisonReport> = reports
        .iter()
        .filter(|r| exceeds(r.max_pairwise_dev, a.dev_tol))
        .collect();
    let worst = bad
        .iter()
        .max_by(|p, q| p.max_pairwise_dev.total_cmp(&q.max_pairwise_dev));
    match worst {
        None => Ok(()),
        Some(w) => Err(Failure::Disagreement(format!(
            "{} point(s) exceed --dev-tol {:e}; worst {:e} at r={}, n={}, x={}",
            bad.len(),
            a.dev_tol,
            w.max_pairwise_dev,
            w.spec.r(),
            w.spec.n(),
            w.x
        ))),
    }
}

pub fn bench_row(row: &BenchRow) -> String {
    let g = |v: f64| fmt_g(v, CSV_DIGITS);
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        row.r,
        row.n,
        g(row.x),
        g(row.reference),
        g(row.oracle_dev),
        g(row.oracle_us),
        g(row.theorem_float_dev),
        g(row.theorem_float_us),
        g(row.moment_eval_dev),
        g(row.moment_eval_us),
        opt(row.corollary_float_dev),
        opt(row.corollary_float_us),
        opt(row.alkemade_dev),
        opt(row.alkemade_us),
        row.flagged,
    )
}

pub fn bench(
    a: &BenchArgs,
    format: Option<OutputFormat>,
    cfg: &EvalConfig,
    out: &mut impl Write,
) -> Result<(), Failure> {
    reject_format(format, &[OutputFormat::Csv], "bench")?;
    let xs = match &a.x_points {
        Some(s) => parse_x_grid(s).map_err(Failure::Usage)?,
        None => {
            let mut xs = vec![0.9, 0.99];
            if !xs.contains(&a.x_near_one) {
                xs.push(a.x_near_one);
            }
            xs
        }
    };
    check_dev_tol(a.dev_tol)?;
    let rows = stability_bench(a.r, a.n_max, &xs, a.repeats, a.flag_threshold, cfg)?;
    writeln!(out, "{BENCH_HEADER}").map_err(io)?;
    for row in &rows {
        writeln!(out, "{}", bench_row(row)).map_err(io)?;
    }
    out.flush().map_err(io)?;
    let flagged = rows.iter().filter(|r| r.flagged).count();
    if flagged > 0 {
        eprintln!(
            "mkz: double-precision closed form exceeds {:e} in {flagged} of {} rows",
            a.flag_threshold,
            rows.len()
        );
    }
    let bad = rows
        .iter()
        .filter(|r| exceeds(r.moment_eval_dev, a.dev_tol))
        .count();
    if bad > 0 {
        return Err(Failure::Disagreement(format!(
            "moment_eval deviates by more than {:e} in {bad} row(s)",
            a.dev_tol
        )));
    }
    Ok(())
}
