use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_approxspec"))
        .args(args)
        .env_remove("APPROXSPEC_FORMAT")
        .env_remove("APPROXSPEC_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn cf_expand_period_four() {
    let v = json(&["cf-expand", "sqrt(6)*2/5+2/5"]);
    assert_eq!(v["expansion"], "[1; (2,1,1,1)^w]");
    // Purely periodic: [1; (2,1,1,1)^w] = [(1,2,1,1)^w].
    assert_eq!(v["preperiod"], 0);
    assert_eq!(v["period"], 4);
}

#[test]
fn repro_golden_markov() {
    let v = json(&["repro", "golden-markov"]);
    assert_eq!(v["pass"], true);
    assert_eq!(
        v["exact"]["markov"],
        serde_json::json!({"p": "0", "q": "1", "r": "5", "d": "5"})
    );
    assert!(v["decimals"]["markov"]
        .as_str()
        .unwrap()
        .starts_with("0.44721359549995793928"));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["measured"] == "0.4472135955"));
}

#[test]
fn failing_checks_exit_with_code_three() {
    let out = run(&["repro", "period-four"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL period-four"));
}

#[test]
fn exact_values_round_trip_through_text() {
    for lit in [
        "[(1,2,1,1)^w]",
        "[0; (5,4)^w]",
        "[3; 7, 15, 1, 292]",
        "(3-2*sqrt(7))/11",
    ] {
        let v = json(&["cf-eval", lit]);
        let text = v["value"]["text"].as_str().unwrap().to_string();
        let again = json(&["cf-eval", &text]);
        assert_eq!(again["value"], v["value"], "{lit}");
        assert_eq!(again["expansion"], v["expansion"]);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["repro", "legendre", "--seed", "7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let a = stdout(&[
        "box-scan",
        "--alpha",
        "sqrt(3)",
        "--mmax",
        "2000",
        "--workers",
        "1",
    ]);
    let b = stdout(&["box-scan", "--alpha", "sqrt(3)", "--mmax", "2000"]);
    assert_eq!(a, b);
}

#[test]
fn csv_layouts() {
    let s = stdout(&["approx-seq", "phi", "--depth", "3", "--format", "csv"]);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("N,p,q,value_lo,value_hi,sign"));
    assert!(lines.next().unwrap().starts_with("0,1,1,"));
    assert_eq!(s.lines().count(), 5);

    let s = stdout(&[
        "box-eigen",
        "--a",
        "2",
        "--b",
        "3",
        "--kmax",
        "2",
        "--mmax",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(
        s.lines().collect::<Vec<_>>(),
        [
            "k,m,lambda_coeff_num,lambda_coeff_den",
            "1,1,5,36",
            "1,2,-7,36",
            "2,1,8,9",
            "2,2,5,9"
        ]
    );

    let s = stdout(&[
        "cantor-sum",
        "--alphabet",
        "4,5",
        "--cover",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(s.lines().next(), Some("lo,hi"));
    assert_eq!(s.lines().count(), 5);
}

#[test]
fn env_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_approxspec"))
        .args(["convergents", "[1; 2, 2, 2]"])
        .env("APPROXSPEC_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "N,p,q\n0,1,1\n1,3,2\n2,7,5\n3,17,12\n"
    );
}

#[test]
fn structured_errors() {
    let out = run(&["cf-eval", "[1; 0, 2]"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "InvalidDigit");

    let out = run(&["approx-seq", "3/7"]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "RationalInput");

    let out = run(&["pu-spectrum", "--ox", "sqrt(2)", "--oy", "sqrt(3)"]);
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "MixedRadicands");

    assert!(!run(&["no-such-command"]).status.success());
    assert!(!run(&["cf-expand", "2", "--precision", "5"])
        .status
        .success());
    assert!(
        !run(&["word-scan", "spiked", "--targets", "1", "--tol", "0"])
            .status
            .success()
    );
}

#[test]
fn stream_inputs() {
    let v = json(&["cf-expand", "e", "--depth", "7"]);
    assert_eq!(
        v["digits"],
        serde_json::json!(["2", "1", "2", "1", "1", "4", "1"])
    );
    let v = json(&["markov", "word:universal-45", "--depth", "5000"]);
    assert_eq!(v["mode"], "numeric");
    let v = json(&[
        "word-scan",
        "universal-14",
        "--targets",
        "-0.7071067811865476,0.5",
        "--depth",
        "20000",
    ]);
    assert_eq!(v["all_within_tol"], true);
    let v = json(&["hausdorff", "--alphabet", "4,5"]);
    assert_eq!(v["below_half_exact"], true);
    assert!(v["upper"].as_str().unwrap().starts_with("0.4837"));
}
