//! End-to-end tests of the dfrac binary: determinism, CSV round trips, and
//! the exit-code contract (0 pass, 1 tolerance failure, 2 usage/parse
//! error, 3 non-convergence).

use std::process::{Command, Output};

fn dfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfrac"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn apply_builtin_caputo_of_one_is_zero() {
    let out = dfrac(&[
        "apply", "--family", "caputo", "--calculus", "nabla", "--side", "left", "--order", "1/2",
        "--base", "0", "--builtin", "one", "--length", "8",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value"));
    for line in lines {
        let (_, v) = line.split_once(',').unwrap();
        assert_eq!(v, "0");
    }
}

#[test]
fn apply_cumulative_sum_ramp() {
    let out = dfrac(&[
        "apply", "--family", "sum", "--calculus", "nabla", "--side", "left", "--order", "1",
        "--base", "0", "--builtin", "one", "--length", "5",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "t,value\n0,0\n1,1\n2,2\n3,3\n4,4\n");
}

#[test]
fn apply_output_round_trips_byte_for_byte() {
    let dir = std::env::temp_dir().join(format!("dfrac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("first.csv");
    let args = [
        "apply", "--family", "sum", "--calculus", "delta", "--side", "left", "--order", "1/2",
        "--base", "0", "--builtin", "square", "--length", "9",
    ];
    let out = dfrac(&[&args[..], &["--output", first.to_str().unwrap()]].concat());
    assert!(out.status.success());
    let bytes_a = std::fs::read(&first).unwrap();

    // identical flags produce byte-identical output on stdout
    let out2 = dfrac(&args);
    assert_eq!(out2.stdout, bytes_a);

    // re-ingesting the output through a zero-order (identity) operator
    // reproduces it byte-for-byte; the t column carries exact rationals
    let second = dir.join("second.csv");
    let out3 = dfrac(&[
        "apply", "--family", "sum", "--calculus", "nabla", "--side", "left", "--order", "0",
        "--base", "1/2", "--input", first.to_str().unwrap(), "--output",
        second.to_str().unwrap(),
    ]);
    assert!(out3.status.success(), "{}", String::from_utf8_lossy(&out3.stderr));
    assert_eq!(std::fs::read(&second).unwrap(), bytes_a);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_single_suite_passes() {
    let out = dfrac(&[
        "check", "--suite", "left-dual-i", "--order", "1/2", "--length", "16",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,params,seed,residual,pass"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("left-dual-i,"));
    assert!(row.ends_with(",true"));
    assert_eq!(lines.next(), None);
}

#[test]
fn check_zero_tolerance_fails_with_exit_one() {
    let out = dfrac(&["check", "--suite", "q-delta-caputo", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_is_deterministic_per_seed() {
    let args = ["check", "--suite", "byparts-nabla-sum", "--seed", "7"];
    let a = dfrac(&args);
    let b = dfrac(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = dfrac(&["check", "--suite", "byparts-nabla-sum", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = dfrac(&["check", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = dfrac(&["check", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ml_closed_forms() {
    let out = dfrac(&[
        "ml", "--family", "nabla", "--alpha", "1", "--beta", "1", "--lambda", "0.5", "--z", "2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value: f64 = text.split_whitespace().next().unwrap().parse().unwrap();
    assert!((value - 4.0).abs() < 1e-10);

    let out = dfrac(&[
        "ml", "--family", "delta", "--alpha", "1", "--lambda", "1", "--z", "3",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "8 K=4");

    let out = dfrac(&[
        "ml", "--family", "nabla", "--alpha", "1/2", "--lambda", "0", "--z", "3",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("1 "));
}

#[test]
fn ml_non_convergence_exits_three() {
    let out = dfrac(&[
        "ml", "--family", "nabla", "--alpha", "1/2", "--lambda", "0.9", "--z", "6", "--kmax", "6",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_exponential_and_method_agreement() {
    let base = [
        "solve", "--calculus", "nabla", "--alpha", "1", "--lambda", "0.5", "--a0", "1", "--N",
        "2", "--forcing", "zero",
    ];
    let out = dfrac(&base);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    let (t, v) = last.split_once(',').unwrap();
    assert_eq!(t, "2");
    let v: f64 = v.parse().unwrap();
    assert!((v - 4.0).abs() < 1e-10);

    // λ = 0 keeps the solution constant
    let out = dfrac(&[
        "solve", "--calculus", "nabla", "--alpha", "1/2", "--lambda", "0", "--a0", "2.5", "--N",
        "4", "--forcing", "zero",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let (_, v) = line.split_once(',').unwrap();
        assert_eq!(v.parse::<f64>().unwrap(), 2.5);
    }

    // ml and marching agree to 1e−8 on the same problem
    let runs: Vec<String> = ["ml", "march"]
        .iter()
        .map(|m| {
            let out = dfrac(&[
                "solve", "--calculus", "nabla", "--alpha", "1/2", "--lambda", "0.3", "--a0", "1",
                "--N", "10", "--forcing", "one", "--method", m,
            ]);
            assert!(out.status.success());
            String::from_utf8(out.stdout).unwrap()
        })
        .collect();
    for (l1, l2) in runs[0].lines().skip(1).zip(runs[1].lines().skip(1)) {
        let v1: f64 = l1.split_once(',').unwrap().1.parse().unwrap();
        let v2: f64 = l2.split_once(',').unwrap().1.parse().unwrap();
        assert!((v1 - v2).abs() < 1e-8);
    }
}

#[test]
fn solve_from_problem_file() {
    let dir = std::env::temp_dir().join(format!("dfrac-prob-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("problem.json");
    std::fs::write(
        &path,
        r#"{"calculus":"delta","alpha":"1/2","lambda":0.25,"a0":1.0,"N":6,"forcing":"one"}"#,
    )
    .unwrap();
    let out = dfrac(&["solve", "--problem", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    // solution grid starts at a = α−1 = −1/2
    assert!(text.lines().nth(1).unwrap().starts_with("-1/2,"));
    // and the residual is reported on stderr
    assert!(String::from_utf8_lossy(&out.stderr).contains("residual"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn apply_right_side_csv_input() {
    let dir = std::env::temp_dir().join(format!("dfrac-right-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("ones.csv");
    let mut rows = String::from("t,value\n");
    for t in 0..=6 {
        rows.push_str(&format!("{t},1\n"));
    }
    std::fs::write(&input, rows).unwrap();
    // nabla right Riemann of the constant 1 ending at b = 6: first value
    // (at t = b−1) is 1, matching the closed form.
    let out = dfrac(&[
        "apply", "--family", "riemann", "--calculus", "nabla", "--side", "right", "--order",
        "1/2", "--base", "6", "--input", input.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().nth(1).unwrap();
    let (t, v) = first.split_once(',').unwrap();
    assert_eq!(t, "5");
    assert!((v.parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn apply_csv_rows_outside_base_feed_extensions() {
    let dir = std::env::temp_dir().join(format!("dfrac-ext-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("const.csv");
    // rows at t = −1 and t = −2 sit before the base and become extension
    // samples; a nabla Caputo difference of order 5/2 needs two of them
    let mut rows = String::from("t,value\n-2,4\n-1,4\n");
    for t in 0..=9 {
        rows.push_str(&format!("{t},4\n"));
    }
    std::fs::write(&input, rows).unwrap();
    let out = dfrac(&[
        "apply", "--family", "caputo", "--calculus", "nabla", "--side", "left", "--order",
        "5/2", "--base", "0", "--input", input.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        assert_eq!(line.split_once(',').unwrap().1, "0");
    }
    // without the extension rows the same operator is a precondition error
    let short = dir.join("short.csv");
    std::fs::write(&short, "t,value\n0,4\n1,4\n2,4\n3,4\n4,4\n").unwrap();
    let out = dfrac(&[
        "apply", "--family", "caputo", "--calculus", "nabla", "--side", "left", "--order",
        "5/2", "--base", "0", "--input", short.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extension"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn solve_with_csv_forcing() {
    let dir = std::env::temp_dir().join(format!("dfrac-forcing-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let forcing = dir.join("forcing.csv");
    let mut rows = String::from("t,value\n");
    for t in 1..=8 {
        rows.push_str(&format!("{t},1\n"));
    }
    std::fs::write(&forcing, rows).unwrap();
    let from_csv = dfrac(&[
        "solve", "--calculus", "nabla", "--alpha", "1/2", "--lambda", "0.3", "--a0", "1",
        "--N", "8", "--forcing", forcing.to_str().unwrap(),
    ]);
    assert!(from_csv.status.success());
    let builtin = dfrac(&[
        "solve", "--calculus", "nabla", "--alpha", "1/2", "--lambda", "0.3", "--a0", "1",
        "--N", "8", "--forcing", "one",
    ]);
    assert_eq!(from_csv.stdout, builtin.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn solve_rejects_bad_problems() {
    // α out of the solver's range
    let out = dfrac(&[
        "solve", "--calculus", "nabla", "--alpha", "3/2", "--lambda", "0.1", "--N", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // nabla marching with λ = 1 has a singular leading coefficient
    let out = dfrac(&[
        "solve", "--calculus", "nabla", "--alpha", "1/2", "--lambda", "1", "--N", "4",
        "--method", "march",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
