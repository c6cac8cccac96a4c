//! Exit criteria, one test each. Verdict lines go straight to stderr so they
//! show up even when libtest captures output.

// checks are written `!(d <= tol)` so that NaN fails
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::time::{Duration, Instant};

use mkz_core::exact::RationalFunction;
use mkz_core::moments::{
    compare_representations, hyp2f1_1_2, moment_eval, moment_series_oracle, moment_theorem_expr,
    moment_theorem_value, stability_bench, MomentSpec, DEFAULT_FLAG_THRESHOLD,
};
use mkz_core::polylog::{
    expr_eval, li1_deriv_closed, li2_deriv_closed, polylog_deriv_expr, polylog_series, SymbolicExpr,
};
use mkz_core::EvalConfig;

fn x_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 * 0.05).collect()
}

fn spec(r: u32, n: u32) -> MomentSpec {
    MomentSpec::new(r, n).unwrap()
}

/// Report the criterion on stderr, then fail the test if it did not hold.
fn verdict(
    id: u32,
    title: &str,
    notes: &[String],
    failures: &[String],
    elapsed: Duration,
    limit: Option<Duration>,
) {
    let slow = limit.is_some_and(|l| elapsed > l);
    let ok = failures.is_empty() && !slow;
    let mut text = format!(
        "[{}] criterion {id}: {title} ({:.2}s{})\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit
            .map(|l| format!(", limit {}s", l.as_secs()))
            .unwrap_or_default()
    );
    for line in notes.iter().chain(failures.iter().take(10)) {
        text.push_str(&format!("    {line}\n"));
    }
    // one write per criterion keeps parallel tests from interleaving
    std::io::stderr().write_all(text.as_bytes()).unwrap();
    assert!(
        failures.is_empty(),
        "criterion {id}: {} violations",
        failures.len()
    );
    assert!(!slow, "criterion {id}: exceeded runtime limit");
}

#[test]
fn criterion_1_exact_linearity() {
    let start = Instant::now();
    let x = SymbolicExpr::rational(RationalFunction::x());
    let mut failures = Vec::new();
    for n in 1..=30 {
        let e = moment_theorem_expr(spec(1, n));
        if e != x || e.to_string() != "x" {
            failures.push(format!("n={n}: got {e}"));
        }
    }
    verdict(
        1,
        "Theorem(r=1) canonicalizes to x, n=1..30",
        &[],
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn criterion_2_closed_form_equality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=30 {
        if polylog_deriv_expr(1, n) != li1_deriv_closed(n).unwrap() {
            failures.push(format!("Li_1^({n}) differs"));
        }
        if polylog_deriv_expr(2, n) != li2_deriv_closed(n).unwrap() {
            failures.push(format!("Li_2^({n}) differs"));
        }
    }
    verdict(
        2,
        "iterated derivatives equal Li_1/Li_2 closed forms, n=1..30",
        &[],
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_3_four_way_second_moment() {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for n in 1..=20 {
        for &x in &x_grid() {
            let rep = compare_representations(spec(2, n), x, &cfg).unwrap();
            assert_eq!(rep.values().count(), 4);
            worst = worst.max(rep.max_pairwise_dev);
            if !(rep.max_pairwise_dev <= 1e-10) {
                failures.push(format!("n={n} x={x}: {rep:?}"));
            }
        }
    }
    let notes = [format!("worst pairwise deviation {worst:.3e}")];
    verdict(
        3,
        "oracle/Theorem/Corollary/Alkemade within 1e-10, n=1..20",
        &notes,
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_4_general_moment_oracle() {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for r in 1..=6 {
        for n in 1..=20 {
            for &x in &x_grid() {
                let o = moment_series_oracle(spec(r, n), x, &cfg).unwrap();
                let t = moment_theorem_value(spec(r, n), x, &cfg).unwrap();
                let d = (t.value - o.value).abs();
                worst = worst.max(d);
                if !(d <= f64::max(1e-11, 10.0 * o.tail_bound)) {
                    failures.push(format!(
                        "r={r} n={n} x={x}: theorem {} oracle {} ({:?})",
                        t.value, o.value, t.tier
                    ));
                }
            }
        }
    }
    let notes = [format!("worst |theorem - oracle| {worst:.3e}")];
    verdict(
        4,
        "Theorem vs oracle, r=1..6, n=1..20",
        &notes,
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn criterion_5_rate_law() {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    for &x in &[0.2, 0.5, 0.8] {
        let mut prev: Option<f64> = None;
        for &n in &[5u32, 20, 50] {
            let m = moment_eval(spec(2, n), x, &cfg).unwrap();
            let q = (n as f64 + 1.0) * (m - x * x) / (x * (1.0 - x) * (1.0 - x));
            let f = hyp2f1_1_2(n, x, &cfg).unwrap().value;
            let rel = ((q - f) / f).abs();
            if !(rel <= 1e-9) {
                failures.push(format!("n={n} x={x}: rate {q} vs 2F1 {f} (rel {rel:e})"));
            }
            if !(q > 1.0) {
                failures.push(format!("n={n} x={x}: rate {q} not above 1"));
            }
            if let Some(p) = prev {
                if !(q < p) {
                    failures.push(format!("n={n} x={x}: rate {q} not below previous {p}"));
                }
            }
            prev = Some(q);
        }
    }
    verdict(
        5,
        "(n+1)(M_n e_2 - x^2)/(x(1-x)^2) = 2F1(1,2;n+2;x), > 1, decreasing",
        &[],
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_6_brackets() {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let mut xs = vec![0.02];
    xs.extend(x_grid());
    for n in 1..=20 {
        for &x in &xs {
            let m: Vec<f64> = (0..=6)
                .map(|r| moment_eval(spec(r, n), x, &cfg).unwrap())
                .collect();
            if m[0] != 1.0 {
                failures.push(format!("n={n} x={x}: M e_0 = {}", m[0]));
            }
            if !(x * x <= m[2] && m[2] <= x) {
                failures.push(format!("n={n} x={x}: M e_2 = {} outside [x^2, x]", m[2]));
            }
            for r in 0..6 {
                if !(m[r + 1] <= m[r]) {
                    failures.push(format!(
                        "n={n} x={x}: M e_{} = {} > M e_{r} = {}",
                        r + 1,
                        m[r + 1],
                        m[r]
                    ));
                }
            }
        }
    }
    verdict(
        6,
        "M e_0 = 1, x^2 <= M e_2 <= x, M e_{r+1} <= M e_r",
        &[],
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_7_derivative_rule() {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let tight = EvalConfig::default().with_tol(1e-18);
    let h = 1e-6;
    let mut failures = Vec::new();
    for s in 2..=4 {
        let d = polylog_deriv_expr(s, 1);
        for &x in &[-0.7, -0.3, 0.3, 0.5, 0.7] {
            let li = |t: f64| polylog_series(s, t, &tight).unwrap().value;
            let fd = (li(x + h) - li(x - h)) / (2.0 * h);
            let sym = expr_eval(&d, x, &cfg).unwrap();
            let rel = ((sym - fd) / sym).abs();
            if !(rel <= 1e-8) {
                failures.push(format!(
                    "s={s} x={x}: symbolic {sym} vs FD {fd} (rel {rel:e})"
                ));
            }
        }
    }
    verdict(
        7,
        "d/dx Li_s matches central differences, s=2..4",
        &[],
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_8_stability() {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();

    // branch-selected evaluation stays on the oracle everywhere
    let mut xs = vec![0.02];
    xs.extend(x_grid());
    xs.push(0.999);
    let mut worst = 0.0f64;
    for r in 0..=6 {
        for n in 1..=20 {
            for &x in &xs {
                let m = moment_eval(spec(r, n), x, &cfg).unwrap();
                let o = moment_series_oracle(spec(r, n), x, &cfg).unwrap().value;
                worst = worst.max((m - o).abs());
                if !((m - o).abs() <= 1e-10) {
                    failures.push(format!("r={r} n={n} x={x}: moment_eval {m} vs oracle {o}"));
                }
            }
        }
    }
    let mut notes = vec![format!("worst |moment_eval - oracle| {worst:.3e}")];

    // the plain double-precision closed form does not, for small x at large n
    let rows = stability_bench(
        2,
        20,
        &[0.02, 0.05, 0.9, 0.999],
        1,
        DEFAULT_FLAG_THRESHOLD,
        &cfg,
    )
    .unwrap();
    let lost = rows
        .iter()
        .filter(|r| r.n == 20 && r.x <= 0.05)
        .all(|r| r.flagged && r.theorem_float_dev > DEFAULT_FLAG_THRESHOLD);
    if !lost {
        failures.push("float closed form not flagged at n=20, small x".into());
    }
    for row in &rows {
        if !(row.moment_eval_dev <= 1e-10) {
            failures.push(format!(
                "bench n={} x={}: moment_eval deviation {:e}",
                row.n, row.x, row.moment_eval_dev
            ));
        }
    }
    let flagged: Vec<_> = rows
        .iter()
        .filter(|r| r.flagged)
        .map(|r| (r.n, r.x))
        .collect();
    notes.push(format!("float closed form flagged at (n, x): {flagged:?}"));
    verdict(
        8,
        "moment_eval within 1e-10 of oracle incl. x=0.02, 0.999; float closed form degrades",
        &notes,
        &failures,
        start.elapsed(),
        None,
    );
}
