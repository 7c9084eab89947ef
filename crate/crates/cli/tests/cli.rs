use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slmn-joseph"))
}

fn json(out: &std::process::Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn joseph_suite_reports_lambda_c() {
    let out = bin().args(["--m", "4", "--n", "1", "--suite", "joseph"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["version"], 1);
    let suite = &v["cases"][0]["suites"][0];
    assert_eq!(suite["name"], "joseph");
    assert_eq!(suite["status"], "pass");
    let lc = suite["checks"].as_array().unwrap().iter().find(|c| c["name"] == "lambda_c").unwrap();
    assert_eq!(lc["actual"], "-1/32");
    assert_eq!(suite["wall_time_ms"], 0);
}

#[test]
fn narrow_case_is_a_config_error() {
    let out = bin().args(["--case", "3,1", "--suite", "decomposition"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("|m-n| > 2"));
}

#[test]
fn bad_flags_are_config_errors() {
    for args in [&["--case", "4"][..], &["--suite", "nope", "--case", "4,1"], &[], &["--case", "2,2"]] {
        let out = bin().args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = bin().args(["--case", "4,1", "--suite", "beta3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["--case", "4,1", "--case", "5,1", "--suite", "prelim", "--suite", "hwv", "--jobs", "2"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["cases"][0]["m"], 4);
    assert_eq!(v["cases"][1]["m"], 5);
}

#[test]
fn text_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = bin()
        .args(["--case", "4,1", "--suite", "decomposition", "--format", "text", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("sl(4|1) decomposition"));
    assert!(text.ends_with("all checks pass\n"));
}
