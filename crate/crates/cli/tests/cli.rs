use std::path::PathBuf;
use std::process::{Command, Output};

fn lbsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbsurf")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lbsurf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn analyze_paper_s() {
    let out = lbsurf(&["analyze", "--surface", "paper-S"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["K"], "(-1)*W^-2");
    assert_eq!(r["W"], "u^2 + v^2 + 2*u + 2*v + 3");
    assert_eq!(r["H"], "(-u*v - u - v - 1)*W^(-3/2)");
}

#[test]
fn analyze_translation_mode_has_zero_m() {
    let cfg = scratch("translation.toml");
    std::fs::write(&cfg, "A = 1\nB = 0\nf = [0, 0, 1]\ng = [0, 1, 0, 1]\n").unwrap();
    let out = lbsurf(&["analyze", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["m"], "0");
}

#[test]
fn analyze_analytic_family_is_numeric() {
    let out = lbsurf(&["analyze", "--surface", "minimal_tan_gv"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["mode"], "numeric");
    assert!(r["max_abs_H"].as_f64().unwrap() < 1e-9);
}

#[test]
fn lb_reports_comparisons_for_paper_s() {
    let out = lbsurf(&["lb", "--surface", "paper-S", "--which", "III"]);
    assert!(out.status.success());
    let r = json(&out);
    let cmp = r["comparisons"].as_array().unwrap();
    assert_eq!(cmp[0]["against"], "paper-deltaI");
    assert!(cmp[0]["report"]["notes"].as_array().unwrap().iter().any(|n| n == "parallel with constant factor -1"));
    let out = lbsurf(&["lb", "--surface", "paper-S", "--which", "I"]);
    let r = json(&out);
    assert_eq!(r["comparisons"][1]["report"]["status"], "exact-pass");
    assert!(r["comparisons"][0]["report"]["witness"].is_object());
}

#[test]
fn lb_of_linear_patch_is_zero() {
    let cfg = scratch("linear.toml");
    std::fs::write(&cfg, "x = \"u + v\"\ny = \"u - v\"\nz = \"2*u + 3*v\"\n").unwrap();
    let out = lbsurf(&["lb", "--config", cfg.to_str().unwrap(), "--which", "I"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["components"], serde_json::json!(["0", "0", "0"]));
    let out = lbsurf(&["lb", "--config", cfg.to_str().unwrap(), "--which", "III"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn implicitize_builtins_both_methods() {
    for method in ["groebner", "interp"] {
        let out = lbsurf(&["implicitize", "--surface", "paper-deltaI", "--method", method]);
        assert!(out.status.success());
        let r = json(&out);
        assert_eq!(r["q"], "27*x^3*y^3 - 18*x^2*y^2*z - 2*x^2*z^3 - 2*y^2*z^3");
        assert_eq!(r["degree"], 6);
        assert_eq!(r["published_match"], true);
    }
    let out = lbsurf(&["implicitize", "--surface", "saddle"]);
    assert_eq!(json(&out)["q"], "x*y - z");
}

#[test]
fn outputs_are_deterministic() {
    let a = lbsurf(&["implicitize", "--surface", "paper-deltaIII", "--method", "interp"]);
    let b = lbsurf(&["implicitize", "--surface", "paper-deltaIII", "--method", "interp"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn class_of_plane_is_an_error() {
    let out = lbsurf(&["class", "--surface", "plane"]);
    assert!(!out.status.success());
}

#[test]
fn class_of_paraboloid() {
    let out = lbsurf(&["class", "--surface", "paraboloid", "--method", "interp"]);
    let r = json(&out);
    assert_eq!(r["class"], 2);
    assert_eq!(r["q_hat"], "a^2 + b^2 - 4*c");
}

#[test]
fn mesh_writes_obj_and_csv() {
    let obj = scratch("tan.obj");
    let out = lbsurf(&["mesh", "--surface", "minimal_tan_fu", "--grid", "6x5", "--out", obj.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 30);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 40);
    let csv = std::fs::read_to_string(obj.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("i,j,u,v,x,y,z"));
    let out = lbsurf(&["mesh", "--surface", "paper-S", "--grid", "1x1", "--out", obj.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_suite_passes() {
    let out = lbsurf(&["verify"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["passed"], true);
    let checks = r["checks"].as_array().unwrap();
    let informative: Vec<_> = checks.iter().filter(|c| c["informative"] == true).collect();
    assert!(informative.iter().any(|c| c["report"]["status"] == "fail"));
}

#[test]
fn verify_with_tampered_equation_fails() {
    let cfg = scratch("tampered.toml");
    std::fs::write(&cfg, "surface = \"paper-deltaI\"\nimplicit = \"27*x^3*y^3 - 18*x^2*y^2*z - 2*x^2*z^3 + 2*y^2*z^3\"\n").unwrap();
    let out = lbsurf(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_config_exits_4() {
    let cfg = scratch("bad.toml");
    std::fs::write(&cfg, "surface = \"paper-S\"\ncolour = \"blue\"\n").unwrap();
    assert_eq!(lbsurf(&["analyze", "--config", cfg.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(lbsurf(&["implicitize", "--surface", "saddle", "--method", "magic"]).status.code(), Some(4));
    assert_eq!(lbsurf(&["analyze", "--surface", "no-such-thing"]).status.code(), Some(4));
}

#[test]
fn budget_exceeded_exits_3() {
    let out = lbsurf(&["class", "--surface", "paper-deltaI", "--method", "groebner", "--budget-seconds", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--method interp"));
}
