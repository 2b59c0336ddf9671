use std::process::{Command, Output};

use serde_json::Value;
use twistkit::{emit_report, run_suite, to_json, Format, Suite, SuiteConfig};
use twistkit_core::coeff::rat;
use twistkit_core::report::{Check, Status, VerificationReport};

fn twistkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn statuses(v: &Value) -> Vec<String> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn twist_axioms_all_pass() {
    let out = twistkit(&["twist-axioms", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(statuses(&v).iter().all(|s| s == "pass"));
    assert_eq!(v["config"]["order"], "4");
}

#[test]
fn qybe_single_point_has_zero_residual() {
    let out = twistkit(&["qybe", "--q", "2", "--xi", "1", "--z", "1/2", "1/3", "1/5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_id"] == "qybe.drm.q=2.xi=1")
        .expect("grid point present");
    assert_eq!(c["status"], "pass");
    assert_eq!(c["residual"], "0");
}

#[test]
fn qybe_default_grid() {
    let r = run_suite(&SuiteConfig::new(Suite::Qybe)).unwrap();
    for id in [
        "qybe.drm.q=4.xi=1",
        "qybe.drm.q=9.xi=1/2",
        "qybe.drm.q=25.xi=2",
    ] {
        assert_eq!(r.get(id).map(|c| c.status), Some(Status::Pass), "{id}");
    }
    assert_eq!(
        r.get("qybe.negative-control").map(|c| c.status),
        Some(Status::Pass)
    );
}

#[test]
fn limits_include_trivial_twist_corner() {
    let out = twistkit(&["limits"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let anchors: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "pass")
        .map(|c| c["paper_anchor"].as_str().unwrap())
        .collect();
    assert!(anchors.contains(&"F_qJ(h,0) = 1⊗1"));
}

#[test]
fn closed_forms_report_misprints_with_both_forms() {
    let out = twistkit(&["closed-forms"]);
    assert_eq!(out.status.code(), Some(0), "misprints do not fail");
    let v = json(&out);
    let c = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_id"] == "closed.qj-bor.coproduct.E")
        .unwrap();
    assert_eq!(c["status"], "documented-misprint");
    assert!(c["printed"].is_string());
    assert!(c["derived"].is_string());
}

#[test]
fn output_is_deterministic_and_sorted() {
    let a = twistkit(&["rmatrix", "--zeta", "3"]);
    let b = twistkit(&["rmatrix", "--zeta", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.contains(&"rmatrix.qj.cybe.zeta=3"));
}

#[test]
fn json_key_order_is_fixed() {
    let mut r = VerificationReport::new("empty");
    r.param("order", "4".into());
    let s = to_json(&r);
    let keys = [
        "\"suite\"",
        "\"engine_version\"",
        "\"config\"",
        "\"passed\"",
        "\"checks\"",
        "\"tables\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    let v: Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["checks"], Value::Array(vec![]));

    r.push(Check::exact("a", "anchor", true, String::new));
    let v: Value = serde_json::from_str(&to_json(&r)).unwrap();
    assert_eq!(v["checks"][0]["status"], "pass");
    assert_eq!(v["checks"][0]["residual"], "0");
    let s = to_json(&r);
    let keys = [
        "\"check_id\"",
        "\"paper_anchor\"",
        "\"status\"",
        "\"residual\"",
        "\"printed\"",
        "\"derived\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn text_format_aligns_and_summarizes() {
    let mut r = VerificationReport::new("demo");
    r.push(Check::exact("short", "x", true, String::new));
    r.push(Check::exact("much.longer.id", "x", false, || "z^2".into()));
    let t = emit_report(&r, Format::Text);
    let lines: Vec<&str> = t.lines().collect();
    assert_eq!(lines[1].find("pass"), lines[2].find("fail"));
    assert!(t.ends_with("2 checks, 1 failed\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(twistkit(&["bogus"]).status.code(), Some(2));
    assert_eq!(twistkit(&["qybe", "--q", "x/y"]).status.code(), Some(2));
    assert_eq!(twistkit(&["qybe", "--z", "1/2"]).status.code(), Some(2));
    assert_eq!(twistkit(&["hopf", "--order", "0"]).status.code(), Some(2));
    assert_eq!(
        twistkit(&["qybe", "--q", "4", "--z", "1/2", "1/2", "1/5"])
            .status
            .code(),
        Some(2),
        "z1 = z2 hits the z = 1 pole"
    );
    assert_eq!(twistkit(&["qybe", "--xi", "-3"]).status.code(), Some(0));
}

#[test]
fn out_writes_file() {
    let dir = std::env::temp_dir().join(format!("twistkit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("qybe.json");
    let out = twistkit(&["qybe", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "qybe");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn affine_reports_convergence_table() {
    let mut cfg = SuiteConfig::new(Suite::Affine);
    cfg.nmax = 4;
    cfg.z = vec![rat(1, 10)];
    let r = run_suite(&cfg).unwrap();
    assert!(r.all_passed());
    let t = r.tables.iter().find(|t| t.name == "convergence").unwrap();
    assert_eq!(t.rows.len(), 2);
    assert_eq!(t.rows[1][0], "4");
    assert_eq!(t.rows[1][1], "5");
}
