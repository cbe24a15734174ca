use std::process::{Command, Output};

fn twdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twdp")).args(args).output().expect("spawn twdp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn qbinom_csv_row() {
    let o = twdp(&["--format", "csv", "qbinom", "--ring", "Zt", "--nmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "4,2,1,1,2,1,1"));
}

#[test]
fn qbinom_nmax_zero() {
    let o = twdp(&["--format", "csv", "qbinom", "--nmax", "0"]);
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert_eq!(rows, ["0,0,1"]);
}

#[test]
fn qbinom_json_at_root_of_unity() {
    let o = twdp(&["qbinom", "--ring", "CycF:3", "--nmax", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let r = rows.iter().find(|r| r["n"] == 3 && r["k"] == 1).unwrap();
    assert!(r["coeffs"].as_array().unwrap().iter().all(|c| c == 0));
}

#[test]
fn bad_descriptor_is_usage_error() {
    for ring in ["Q", "CycF:0", "Fp:4", "CycF:x"] {
        let o = twdp(&["qbinom", "--ring", ring]);
        assert_eq!(o.status.code(), Some(2), "{ring}");
    }
}

#[test]
fn frob_coeffs_needs_p_at_least_two() {
    assert_eq!(twdp(&["frob-coeffs", "--p", "1"]).status.code(), Some(2));
    assert_eq!(twdp(&["frob-coeffs"]).status.code(), Some(2));
}

#[test]
fn frob_coeffs_tables() {
    let o = twdp(&["frob-coeffs", "--p", "2", "--nmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["A"].as_array().unwrap().len(), 1 + 3 + 5);
    let c = &v["C"][0];
    assert_eq!(c["num"], serde_json::json!([1]));
    let csv = stdout(&twdp(&["--format", "csv", "frob-coeffs", "--p", "3", "--nmax", "1"]));
    assert!(csv.lines().any(|l| l.starts_with("A,1,3,")));
    assert!(csv.lines().any(|l| l.starts_with("C.den,1,3,")));
}

#[test]
fn verify_passing_suite() {
    let o = twdp(&["verify", "--suite", "lucas", "--ring", "CycF:3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "lucas");
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_unknown_suite() {
    let o = twdp(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn center_text() {
    let o = twdp(&["--format", "text", "center", "--ring", "CycF:2", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("center") && l.ends_with("∂^2")));
}

#[test]
fn simpson_needs_finite_q_characteristic() {
    assert_eq!(twdp(&["simpson", "--ring", "Zt"]).status.code(), Some(2));
    assert_eq!(twdp(&["simpson", "--ring", "CycF:2", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn simpson_report_shape() {
    let o = twdp(&["simpson", "--ring", "Fp:2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cases = v["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    let zero = cases.iter().find(|c| c["name"] == "rank1-zero").unwrap();
    assert_eq!(zero["passed"], true);
    assert!(zero["recovered"].is_array());
    let failed = v["failures"].as_u64().unwrap();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 1 }));
}

#[test]
fn out_writes_file() {
    let dir = std::env::temp_dir().join(format!("twdp-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.csv");
    let o = twdp(&["--format", "csv", "--out", path.to_str().unwrap(), "qbinom", "--nmax", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(&path).unwrap();
    assert!(s.starts_with("n,k,coefficients\n"));
    std::fs::remove_dir_all(&dir).ok();
}
