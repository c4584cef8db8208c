use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ncsphere"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).env("NCSPHERE_THREADS", "2").output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn chern_suite_passes() {
    let (code, out) = run(&["verify", "--suite", "chern", "--u", "1/3,1/4,1/5"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["task"], "verify:chern");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "chern/ch_1/2(U_u) = 0" && c["pass"] == true));
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "splitting", "--seed", "7"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn bad_angles_are_a_config_error() {
    let (code, _) = run(&["verify", "--suite", "chern", "--u", "1/3,1/4"]);
    assert_eq!(code, 2);
}

#[test]
fn flow_csv_columns() {
    let (code, out) = run(&["flow", "--u", "1.0,0.8,0.6", "--t", "0.1", "--every", "10"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,phi1,phi2,phi3,J12,J23,J31,j"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.split(',').count() == 8));
}

#[test]
fn classify_grid_csv() {
    let (code, out) = run(&["classify", "--grid", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("phi1,phi2,phi3,label\n"));
    // points with φ₁ ≥ φ₂ ≥ φ₃ on a 4-step grid: C(6,3) = 20
    assert_eq!(out.lines().count(), 21);
    assert!(out.contains("P_ORBIT") && out.contains("O_ORBIT"));
}

#[test]
fn grassmann_report_fields() {
    let (code, out) = run(&["grassmann", "--report"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coeff_sigma1"], v["coeff_sigma2"]);
    assert!(v["commutator_support"].as_u64().unwrap() > 0);
}
