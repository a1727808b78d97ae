use std::path::PathBuf;
use std::process::{Command, Output};

fn opineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opineq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    opineq(args).status.code().expect("exit code")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("opineq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout_of(args: &[&str]) -> String {
    let out = opineq(args);
    assert!(out.status.code().is_some());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn bz_passes() {
    assert_eq!(code(&["verify", "bz", "--qmax", "60", "--lambda", "2", "--tol", "1e-9"]), 0);
}

#[test]
fn smalltheta_at_half_turn_fails() {
    let out = opineq(&["verify", "smalltheta", "--theta0", "0.5", "--qmax", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL"));
}

#[test]
fn graded_dims_pass() {
    assert_eq!(code(&["graded", "dims", "--max", "8"]), 0);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(code(&["verify", "bz", "--no-such-flag"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["verify", "bz", "--qmax", "zero"]), 1);
    assert_eq!(code(&["symmetry", "threshold", "--r", "x/y"]), 1);
    assert_eq!(code(&["verify", "bz", "--jobs", "0"]), 1);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["verify", "--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn invalid_parameters_are_errors() {
    // qmax = 0 and an out-of-range kappa are rejected by the library.
    assert_eq!(code(&["verify", "xyz1", "--qmax", "0"]), 1);
    assert_eq!(code(&["verify", "zzz", "--kappa", "1.5"]), 1);
    assert_eq!(code(&["expander", "run", "--q", "4", "--p", "one", "--cap", "10"]), 1);
}

#[test]
fn json_report_shape() {
    let path = tmp("bz.json");
    assert_eq!(code(&["verify", "bz", "--qmax", "12", "--out", path.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "verify bz");
    assert_eq!(v["pass"], true);
    assert_eq!(v["params"]["qmax"], 12);
    assert!(v["min_margin"].is_number());
    assert!(v["witnesses"].is_array());
    assert!(v.get("runtime_ms").is_none());

    assert_eq!(code(&["verify", "bz", "--qmax", "12", "--timing", "--out", path.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["runtime_ms"].is_number());
}

#[test]
fn failing_search_names_best_candidate() {
    let s = stdout_of(&["verify", "smalltheta", "--theta0", "1/2", "--qmax", "8", "--out", "-"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["witnesses"][0]["kind"], "best_failing");
    assert!(v["min_margin"].as_f64().unwrap() < 0.0);
}

#[test]
fn csv_headers() {
    let cases: [(&[&str], &str); 4] = [
        (&["verify", "xyz1", "--qmax", "6"], "p,q,theta,margin"),
        (&["graded", "dims", "--max", "3"], "n,formula,enumerated"),
        (&["symmetry", "threshold", "--max", "8"], "n,applies,op_coefficient,epsilon_n,epsilon_prime"),
        (&["expander", "run", "--q", "2"], "n,q,p,order,degree,lambda2,gap,normalized_gap"),
    ];
    for (args, header) in cases {
        let mut a = args.to_vec();
        a.extend(["--format", "csv", "--out", "-"]);
        let s = stdout_of(&a);
        assert_eq!(s.lines().next(), Some(header), "{args:?}");
    }
}

#[test]
fn expander_rows() {
    let s = stdout_of(&["expander", "run", "--q", "2,3", "--format", "csv", "--out", "-"]);
    let rows: Vec<Vec<&str>> = s.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][..5], ["3", "2", "1", "168", "6"]);
    assert_eq!(&rows[1][..5], ["3", "3", "1", "5616", "12"]);
    let gap: f64 = rows[0][7].parse().unwrap();
    assert!((gap - 0.264297739604).abs() < 1e-9);
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        &["verify", "xsmall", "--qmax", "16"][..],
        &["symmetry", "orbit", "--m", "4", "--n", "5", "--d", "1"][..],
        &["expander", "run", "--q", "2,3"][..],
    ] {
        let runs: Vec<String> = ["1", "2", "2"]
            .iter()
            .map(|jobs| {
                let mut a = args.to_vec();
                a.extend(["--jobs", jobs, "--out", "-"]);
                stdout_of(&a)
            })
            .collect();
        assert_eq!(runs[0], runs[1], "{args:?}: --jobs 1 vs 2");
        assert_eq!(runs[1], runs[2], "{args:?}: repeated run");
    }
}

#[test]
fn all_quick_passes() {
    let out = opineq(&["all", "--quick", "--format", "csv", "--out", "-"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = String::from_utf8(out.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("command,pass,min_margin,exact_match"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 15);
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("true")));
}
