use std::process::{Command, Output};

use mkz_core::moments::{moment_theorem_expr, MomentSpec};
use mkz_core::polylog::BasisElement;

const COMPARE_HEADER: &str = "r,n,x,oracle,theorem,corollary,alkemade,max_dev,tail_bound";

fn mkz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mkz"))
        .args(args)
        .output()
        .expect("failed to run mkz")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn assert_usage_error(o: &Output) {
    assert_eq!(o.status.code(), Some(2), "stderr: {}", stderr(o));
    assert!(o.stdout.is_empty());
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err:?}");
    assert!(err.starts_with("mkz: "));
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

fn reemit(text: &str) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for rec in csv_rows(text) {
        w.write_record(&rec).unwrap();
    }
    w.into_inner().unwrap()
}

#[test]
fn eval_examples() {
    let o = mkz(&["eval", "--r", "1", "--n", "5", "--x", "0.3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.3\n");

    assert_eq!(
        stdout(&mkz(&["eval", "--r", "0", "--n", "2", "--x", "0.9"])),
        "1\n"
    );

    let o = mkz(&["eval", "--r", "2", "--n", "1", "--x", "0.5"]);
    assert_eq!(stdout(&o), "0.34657359028\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn eval_fraction_and_digits() {
    let o = mkz(&[
        "eval", "--r", "2", "--n", "1", "--x", "1/2", "--digits", "15",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.346573590279973\n");
    // 1/3 is not a double; linearity must still hold to print precision
    let o = mkz(&["eval", "--r", "1", "--n", "7", "--x", "1/3"]);
    assert_eq!(stdout(&o), "0.333333333333\n");
}

#[test]
fn eval_verbose_goes_to_stderr() {
    let o = mkz(&["eval", "--r", "2", "--n", "20", "--x", "0.02", "--verbose"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    let err = stderr(&o);
    assert!(err.contains("branch: series"), "{err}");
    assert!(err.contains("error bound"), "{err}");

    let o = mkz(&["eval", "--r", "2", "--n", "3", "--x", "0.7", "-v"]);
    assert!(stderr(&o).contains("branch: closed form"));
}

#[test]
fn eval_negative_x_needs_flag() {
    assert_usage_error(&mkz(&["eval", "--r", "2", "--n", "3", "--x", "-0.5"]));
    let o = mkz(&[
        "eval",
        "--r",
        "2",
        "--n",
        "3",
        "--x",
        "-0.5",
        "--allow-negative-x",
    ]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).trim().parse().unwrap();
    // x^2 <= M_n e_2 fails off [0,1) in general, but the value is finite and positive here
    assert!(v.is_finite() && v > 0.0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "--r", "2", "--n", "3", "--x", "1"][..],
        &["eval", "--r", "2", "--n", "3", "--x", "abc"],
        &["eval", "--r", "2", "--n", "3", "--x", "1/0"],
        &["eval", "--r", "2", "--n", "0", "--x", "0.5"],
        &["eval", "--r", "2"],
        &["eval", "--r", "x", "--n", "1", "--x", "0.5"],
        &["--tol", "-1", "eval", "--r", "1", "--n", "1", "--x", "0.5"],
        &[
            "--branch-threshold",
            "1.5",
            "eval",
            "--r",
            "1",
            "--n",
            "1",
            "--x",
            "0.5",
        ],
        &["expr", "--r", "2", "--n", "2", "--format", "csv"],
        &["expr", "--r", "2", "--n", "2", "--format", "html"],
        &["compare", "--format", "latex"],
        &["compare", "--r-range", "3..1"],
        &["compare", "--n-range", "0..2"],
        &["compare", "--x-grid", "0,0.5"],
        &["compare", "--x-grid", "0.1:0:0.5"],
        &["bench", "--repeats", "0"],
        &["bench", "--x-near-one", "1"],
        &["frobnicate"],
    ] {
        let o = mkz(args);
        assert_usage_error(&o);
    }
}

#[test]
fn help_is_not_an_error() {
    let o = mkz(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("compare"));
}

#[test]
fn expr_linear_is_x() {
    for n in 1..=30 {
        let o = mkz(&[
            "expr",
            "--r",
            "1",
            "--n",
            &n.to_string(),
            "--format",
            "plain",
        ]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "x\n", "n={n}");
    }
    assert_eq!(stdout(&mkz(&["expr", "--r", "0", "--n", "1"])), "1\n");
    assert_eq!(
        stdout(&mkz(&["expr", "--r", "1", "--n", "4", "--format", "latex"])),
        "x\n"
    );
}

#[test]
fn expr_goldens() {
    assert_eq!(
        stdout(&mkz(&["expr", "--r", "2", "--n", "2"])),
        golden("expr_r2_n2.txt")
    );
    assert_eq!(
        stdout(&mkz(&["expr", "--r", "2", "--n", "2", "--format", "latex"])),
        golden("expr_r2_n2.tex")
    );
    assert_eq!(
        stdout(&mkz(&["expr", "--r", "3", "--n", "3"])),
        golden("expr_r3_n3.txt")
    );
}

#[test]
fn expr_latex_log_coefficient_matches_library() {
    let e = moment_theorem_expr(MomentSpec::new(2, 2).unwrap());
    let log_coeff = e.coefficient(BasisElement::Log).unwrap().to_latex();
    let out = stdout(&mkz(&["expr", "--r", "2", "--n", "2", "--format", "latex"]));
    assert!(out.contains("\\log(1-x)"));
    assert!(
        out.contains(&format!("{log_coeff}\\log(1-x)")),
        "{out} / {log_coeff}"
    );
    let out = stdout(&mkz(&["expr", "--r", "4", "--n", "3", "--format", "latex"]));
    assert!(
        out.contains("\\mathrm{Li}_{2}(x)") && out.contains("\\mathrm{Li}_{3}(x)"),
        "{out}"
    );
}

#[test]
fn compare_rows() {
    let o = mkz(&[
        "compare",
        "--r-range",
        "0,2",
        "--n-range",
        "1",
        "--x-grid",
        "0.25,0.5",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows = csv_rows(&out);
    assert_eq!(
        &rows[0].iter().collect::<Vec<_>>().join(","),
        COMPARE_HEADER
    );
    assert_eq!(rows.len(), 5);
    for row in &rows[1..3] {
        assert_eq!(&row[0], "0");
        assert_eq!(
            (&row[3], &row[4], &row[5], &row[6], &row[7]),
            ("1", "1", "", "", "0")
        );
    }
    let row = &rows[4];
    assert_eq!((&row[0], &row[1], &row[2]), ("2", "1", "0.5"));
    let values: Vec<f64> = (3..7).map(|i| row[i].parse().unwrap()).collect();
    for v in &values {
        assert!((v - 0.346573590279973).abs() < 1e-12, "{v}");
    }
    let max_dev: f64 = row[7].parse().unwrap();
    assert!(max_dev <= 1e-10);
}

#[test]
fn compare_golden_and_round_trip() {
    let o = mkz(&[
        "compare",
        "--r-range",
        "0..3",
        "--n-range",
        "1,2,5",
        "--x-grid",
        "0.1,0.5,0.9",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out, golden("compare_small.csv"));
    assert_eq!(reemit(&out), out.as_bytes());
    for row in &csv_rows(&out)[1..] {
        for cell in row.iter().skip(2).filter(|c| !c.is_empty()) {
            let v: f64 = cell.parse().unwrap();
            assert!(v.is_finite());
        }
    }
}

#[test]
fn compare_default_grid_passes() {
    let o = mkz(&["compare"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 7 * 20 * 19);
    assert_eq!(reemit(&out), out.as_bytes());
    // rows are ordered by r, then n, then x
    let keys: Vec<(u32, u32, f64)> = csv_rows(&out)[1..]
        .iter()
        .map(|r| {
            (
                r[0].parse().unwrap(),
                r[1].parse().unwrap(),
                r[2].parse().unwrap(),
            )
        })
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(keys[0], (0, 1, 0.05));
    assert_eq!(keys[keys.len() - 1], (6, 20, 0.95));
}

#[test]
fn compare_rows_are_sorted() {
    let o = mkz(&[
        "compare",
        "--r-range",
        "2,0",
        "--n-range",
        "3,1",
        "--x-grid",
        "0.7,0.2",
    ]);
    assert!(o.status.success());
    let keys: Vec<String> = csv_rows(&stdout(&o))[1..]
        .iter()
        .map(|r| format!("{},{},{}", &r[0], &r[1], &r[2]))
        .collect();
    let want = [
        "0,1,0.20000000000000001",
        "0,1,0.69999999999999996",
        "0,3,0.20000000000000001",
        "0,3,0.69999999999999996",
        "2,1,0.20000000000000001",
        "2,1,0.69999999999999996",
        "2,3,0.20000000000000001",
        "2,3,0.69999999999999996",
    ];
    assert_eq!(keys, want);
}

#[test]
fn compare_disagreement_exits_1() {
    let o = mkz(&[
        "compare",
        "--r-range",
        "2",
        "--n-range",
        "1",
        "--x-grid",
        "0.5",
        "--dev-tol",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    // the table is still complete
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(stderr(&o).contains("exceed --dev-tol"));
}

#[test]
fn bench_stress_grid() {
    let o = mkz(&["bench", "--n-max", "5", "--repeats", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(reemit(&out), out.as_bytes());
    let rows = csv_rows(&out);
    let header: Vec<&str> = rows[0].iter().collect();
    assert_eq!(rows.len(), 1 + 15);
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let mut xs = Vec::new();
    for row in &rows[1..] {
        xs.push(row[col("x")].parse::<f64>().unwrap());
        for name in [
            "oracle_dev",
            "theorem_float_dev",
            "moment_eval_dev",
            "corollary_float_dev",
            "alkemade_dev",
        ] {
            let d: f64 = row[col(name)].parse().unwrap();
            assert!(d <= 1e-9, "{name} = {d}");
        }
        assert_eq!(&row[col("flagged")], "false");
    }
    xs.dedup();
    assert_eq!(&xs[..3], &[0.9, 0.99, 0.999]);
}

#[test]
fn bench_empty_range() {
    let o = mkz(&["bench", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn bench_flags_cancellation_regime() {
    let o = mkz(&[
        "bench",
        "--n-max",
        "40",
        "--x-near-one",
        "0.999",
        "--repeats",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    let header: Vec<&str> = rows[0].iter().collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let flagged: Vec<_> = rows[1..]
        .iter()
        .filter(|r| &r[col("flagged")] == "true")
        .collect();
    assert!(!flagged.is_empty());
    for r in &flagged {
        assert!(r[col("theorem_float_dev")].parse::<f64>().unwrap() > 1e-6);
    }
    for r in &rows[1..] {
        assert!(r[col("moment_eval_dev")].parse::<f64>().unwrap() <= 1e-10);
    }
    assert!(stderr(&o).contains("double-precision closed form exceeds"));
}
