//! End-to-end tests of the `altdiv` binary: exit codes, output shapes, and
//! JSON round-trips into the library types.

use std::process::{Command, Output};

use altdiv::closure::ClosureEstimate;
use altdiv::density::{DensityReport, EtaResult, ScanRow, Verdict};
use altdiv::greedy::ApproxTrace;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn dense_exit_codes_follow_the_verdict() {
    let not_dense = run(&["dense", "--r", "2"]);
    assert_eq!(not_dense.status.code(), Some(1), "{}", stderr(&not_dense));
    assert!(stdout(&not_dense).contains("NotDense"));

    let dense = run(&["dense", "--r", "1.5"]);
    assert_eq!(dense.status.code(), Some(0));
    assert!(stdout(&dense).contains("Dense"));

    let unit = run(&["dense", "--r", "0.5"]);
    assert_eq!(unit.status.code(), Some(0));
    assert!(stdout(&unit).contains("DenseUnitInterval"));

    let bad = run(&["dense", "--r", "-1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn eval_decimal_and_literal_forms_agree() {
    let a = run(&["eval", "--t", "-2", "--n", "12"]);
    let b = run(&["eval", "--t", "-2", "--n", "2^2*3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("0.7222222222222222"));

    let c = run(&["eval", "--t", "1", "--n", "4"]);
    assert!(stdout(&c).contains(": 3"));

    // Composite base in the literal form is a usage error.
    let bad = run(&["eval", "--t", "-2", "--n", "4^2*3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).to_lowercase().contains("prime") || !stderr(&bad).is_empty());

    let too_big = run(&["eval", "--t", "-2", "--n", "1000000000001"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn eta_tolerances_and_failure_modes() {
    let ok = run(&["eta", "--tol", "1e-7"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("eta = 1.90116"), "{text}");

    // Below the supported floor: usage error, not a solver crash.
    let too_tight = run(&["eta", "--tol", "1e-14"]);
    assert_eq!(too_tight.status.code(), Some(2));
}

#[test]
fn approx_warns_inside_a_proven_gap() {
    let out = run(&["approx", "--r", "2", "--target-s", "0.905"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stderr(&out).contains("inside a proven gap"),
        "missing warning: {}",
        stderr(&out)
    );

    let clean = run(&["approx", "--r", "1.5", "--target-s", "0.9"]);
    assert_eq!(clean.status.code(), Some(0));
    assert!(!stderr(&clean).contains("proven gap"));

    let exact = run(&["approx", "--r", "1.5", "--target-s", "1.0"]);
    assert_eq!(exact.status.code(), Some(0));
    assert!(stdout(&exact).contains("result N = 1"));

    // Outside (0, log zeta(r)).
    let out_of_range = run(&["approx", "--r", "1.5", "--x", "5.0"]);
    assert_eq!(out_of_range.status.code(), Some(2));
    let negative = run(&["approx", "--r", "1.5", "--x", "-0.1"]);
    assert_eq!(negative.status.code(), Some(2));
}

#[test]
fn scan_emits_fixed_order_csv() {
    let out = run(&[
        "scan", "--r-min", "1.88", "--r-max", "1.92", "--step", "0.01", "--m", "1,2,4",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("r,inv_zeta,criterion_m1,criterion_m2,criterion_m4,verdict")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 6);
        // Numeric cells carry 15 significant digits in scientific notation.
        for cell in &cells[..5] {
            let v: f64 = cell.parse().expect("numeric cell");
            assert!(v.is_finite());
            assert!(cell.contains('e'), "cell {cell} not in scientific notation");
            let mantissa = cell.split('e').next().unwrap();
            let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).count();
            assert_eq!(digits, 15, "cell {cell}");
        }
        assert!(matches!(cells[5], "Dense" | "NotDense"));
    }
    // The verdict flips inside this window.
    assert!(rows.iter().any(|r| r.ends_with("Dense")));
    assert!(rows.iter().any(|r| r.ends_with("NotDense")));
}

#[test]
fn json_outputs_round_trip_into_library_types() {
    let dense = run(&["dense", "--r", "2", "--format", "json"]);
    assert_eq!(dense.status.code(), Some(1));
    let rep: DensityReport = serde_json::from_str(&stdout(&dense)).expect("parses");
    assert_eq!(rep.r, 2.0);
    assert_eq!(rep.verdict, Verdict::NotDense);
    assert_eq!(rep.failing_m, vec![2]);
    let re = serde_json::to_string_pretty(&rep).unwrap();
    assert_eq!(re.trim(), stdout(&dense).trim(), "lossy JSON round-trip");

    let eta = run(&["eta", "--tol", "1e-9", "--format", "json"]);
    let res: EtaResult = serde_json::from_str(&stdout(&eta)).expect("parses");
    assert!((res.eta - 1.9011618254).abs() < 1e-8);
    let re = serde_json::to_string_pretty(&res).unwrap();
    assert_eq!(re.trim(), stdout(&eta).trim());

    let approx = run(&["approx", "--r", "1.5", "--target-s", "0.9", "--format", "json"]);
    let trace: ApproxTrace = serde_json::from_str(&stdout(&approx)).expect("parses");
    assert_eq!(trace.r, 1.5);
    assert!(trace.residual < 1e-3);
    let re = serde_json::to_string_pretty(&trace).unwrap();
    assert_eq!(re.trim(), stdout(&approx).trim());

    let closure = run(&["closure", "--r", "2", "--n-max", "2000", "--format", "json"]);
    let est: ClosureEstimate = serde_json::from_str(&stdout(&closure)).expect("parses");
    assert!(est.component_count >= 2);
    assert!(est.note.contains("HEURISTIC"));
    let re = serde_json::to_string_pretty(&est).unwrap();
    assert_eq!(re.trim(), stdout(&closure).trim());

    let scan = run(&[
        "scan", "--r-min", "1.9", "--r-max", "1.91", "--step", "0.01", "--format", "json",
    ]);
    let rows: Vec<ScanRow> = serde_json::from_str(&stdout(&scan)).expect("parses");
    assert_eq!(rows.len(), 2);
    let re = serde_json::to_string_pretty(&rows).unwrap();
    assert_eq!(re.trim(), stdout(&scan).trim());
}

#[test]
fn csv_is_rejected_outside_tabular_commands() {
    for cmd in [
        vec!["eval", "--t", "-2", "--n", "12"],
        vec!["dense", "--r", "2"],
        vec!["eta", "--tol", "1e-7"],
        vec!["approx", "--r", "1.5", "--target-s", "0.9"],
        vec!["verify", "--suite", "prime-ratio"],
    ] {
        let mut args = cmd.clone();
        args.extend(["--format", "csv"]);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "command {cmd:?}");
        assert!(stderr(&out).contains("only supported"));
    }
}

#[test]
fn closure_value_dump_and_component_csv() {
    let comps = run(&["closure", "--r", "2", "--n-max", "1000", "--format", "csv"]);
    assert_eq!(comps.status.code(), Some(0));
    let text = stdout(&comps);
    assert!(text.starts_with("component,lower,upper\n"));
    assert!(text.lines().count() >= 3);

    let vals = run(&[
        "closure", "--r", "2", "--n-max", "1000", "--format", "csv", "--dump-values",
    ]);
    assert_eq!(vals.status.code(), Some(0));
    let text = stdout(&vals);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("value"));
    let parsed: Vec<f64> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(parsed.len(), 1000);
    assert!(parsed.windows(2).all(|w| w[0] <= w[1]), "values sorted");

    // The dump only makes sense as CSV.
    let bad = run(&["closure", "--r", "2", "--n-max", "1000", "--dump-values"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_runs_all_suites_cleanly() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for suite in [
        "square-monotone",
        "step-bound",
        "prime-ratio",
        "criterion-monotone",
        "large-r-witness",
        "order-agreement",
        "greedy-convergence",
    ] {
        assert!(text.contains(&format!("[verify] {suite}: PASS")), "{text}");
    }
    assert!(text.contains("overall: PASS"));

    // A different seed still converges: targets are capped inside the
    // reachable region.
    let seeded = run(&["verify", "--suite", "greedy-convergence", "--seed", "7", "--cases", "5"]);
    assert_eq!(seeded.status.code(), Some(0));
}

#[test]
fn env_overrides_reach_the_precision_config() {
    let out = Command::new(env!("CARGO_BIN_EXE_altdiv"))
        .args(["dense", "--r", "2"])
        .env("ALTDIV_ABS_TOL", "1e-9")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));

    let bad = Command::new(env!("CARGO_BIN_EXE_altdiv"))
        .args(["dense", "--r", "2"])
        .env("ALTDIV_ABS_TOL", "2.0")
        .output()
        .expect("binary runs");
    assert_eq!(bad.status.code(), Some(2));
}
