use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphharm")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

#[test]
fn plain_text_results() {
    assert_eq!(stdout(&["hermite", "-m", "3"]).trim(), "x1^3 - 3*x1");
    assert_eq!(stdout(&["inner", "-p", "x1^2", "-q", "x1^2", "--gaussian"]).trim(), "3");
    assert_eq!(stdout(&["slap", "-p", "x1^2", "-n", "4", "--a2", "N"]).trim(), "-2*x1^2 + 2");
    assert_eq!(stdout(&["gegenbauer", "-b", "1/2", "-m", "2"]).trim(), "x1^2 - 1/3");
    assert_eq!(stdout(&["casimir", "-p", "x1^2", "-n", "3"]).trim(), "-4*x1^2 + 2*x2^2 + 2*x3^2");
    assert_eq!(stdout(&["reduce", "-p", "x3^2", "-n", "3", "--a2", "2"]).trim(), "-x1^2 - x2^2 + 2");
}

#[test]
fn json_results() {
    assert_eq!(json(&["zonal", "-m", "2", "-n", "5", "--a2", "N"])["poly"], "x1^2 - 1");
    assert_eq!(json(&["la", "-p", "x1^2 + x2^2 + x3^2", "-n", "3", "--a2", "2"])["poly"], "2");
    let d = json(&["decompose", "-p", "x1^2", "-n", "3"]);
    assert_eq!(d["check"], true);
    assert_eq!(d["harmonic_components"][0], "2/3*x1^2 - 1/3*x2^2 - 1/3*x3^2");
    assert_eq!(d["harmonic_components"][1], "1/3");
}

#[test]
fn limit_table_formats() {
    let t = json(&["limit-table", "--kind", "inner-product", "-p", "x1^2", "-q", "x1^2", "--n-list", "10,100"]);
    let rows = t["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 10);
    assert_eq!(rows[0]["error"], "1/2");
    assert_eq!(rows[1]["error"], "1/17");

    let csv = stdout(&["--format", "csv", "limit-table", "--kind", "projected-monomial", "-p", "x1^2*x2", "--n-list", "10,100,1000"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,error,error_f64");
    assert!(lines[1].starts_with("10,1/6,"));
    assert!(lines[3].starts_with("1000,1/501,"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("sphharm-cli-{}.json", std::process::id()));
    let out = run(&["--format", "json", "--out", path.to_str().unwrap(), "hermite", "-m", "2"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["poly"], "x1^2 - 1");
}

#[test]
fn bad_input_exits_with_2() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["hermite"]).status.code(), Some(2));
    assert_eq!(run(&["inner", "-p", "x1^", "-q", "1", "--gaussian"]).status.code(), Some(2));
    assert_eq!(run(&["zonal", "-m", "2", "-n", "1", "--a2", "1"]).status.code(), Some(2));
    assert_eq!(run(&["limit-table", "--kind", "zonal-to-hermite", "-m", "2", "--n-list", "100,10"]).status.code(), Some(2));
}

#[test]
fn verify_mc_passes_with_default_seed() {
    let out = run(&["--samples", "20000", "verify", "--suite", "mc"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_identities_small_suite() {
    let out = run(&["verify", "--suite", "identities", "--cases", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
