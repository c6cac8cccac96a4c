//! `mkz`: moments of the Meyer-König–Zeller operators from the command line.
//!
//! Exit codes: 0 success, 1 numerical disagreement, 2 usage, parse or domain
//! error. Data goes to stdout, diagnostics to stderr.

mod commands;
mod format;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mkz",
    version,
    about = "Moments of the Meyer-König–Zeller operators"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Absolute tolerance for series and closed-form evaluation
    #[arg(
        long,
        global = true,
        default_value_t = 1e-13,
        allow_negative_numbers = true
    )]
    tol: f64,
    /// Cap on the number of series terms
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_terms: u64,
    /// Below this x, moments are summed from the operator series
    #[arg(
        long,
        global = true,
        default_value_t = 0.05,
        allow_negative_numbers = true
    )]
    branch_threshold: f64,
    /// Output format (plain/latex for `expr`, csv for `compare` and `bench`)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Allow closed-form evaluation for x in (-1, 0)
    #[arg(long, global = true)]
    allow_negative_x: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Plain,
    Latex,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate (M_n e_r)(x)
    Eval(commands::EvalArgs),
    /// Print the closed form of M_n e_r
    Expr(commands::ExprArgs),
    /// Cross-check every representation on a grid
    Compare(commands::CompareArgs),
    /// Time the representations and measure their deviation near x = 1
    Bench(commands::BenchArgs),
}

/// Terminal outcome of a subcommand, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    Disagreement(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Disagreement(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<mkz_core::Error> for Failure {
    fn from(e: mkz_core::Error) -> Self {
        match e {
            mkz_core::Error::NonConvergence { .. } => Failure::Disagreement(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // clap's first paragraph, folded onto one line
            let rendered = e.to_string();
            let line: Vec<&str> = rendered
                .lines()
                .map(str::trim)
                .take_while(|l| !l.is_empty())
                .collect();
            eprintln!("mkz: {}", line.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let cfg = mkz_core::EvalConfig {
        tol: cli.common.tol,
        max_terms: cli.common.max_terms,
        series_branch_threshold: cli.common.branch_threshold,
        allow_negative_x: cli.common.allow_negative_x,
        ..Default::default()
    };
    let mut out = std::io::stdout().lock();
    let result = cfg.validate().map_err(Failure::from).and_then(|()| {
        let format = cli.common.format;
        match &cli.command {
            Command::Eval(a) => commands::eval(a, format, &cfg, &mut out),
            Command::Expr(a) => commands::expr(a, format, &mut out),
            Command::Compare(a) => commands::compare(a, format, &cfg, &mut out),
            Command::Bench(a) => commands::bench(a, format, &cfg, &mut out),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Disagreement(m) | Failure::Usage(m) => eprintln!("mkz: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
