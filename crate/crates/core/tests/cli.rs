use std::process::Command;

use serde_json::Value;

fn dcoset(args: &[&str]) -> (i32, String, String) {
    dcoset_env(args, None)
}

fn dcoset_env(args: &[&str], primes: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dcoset"));
    cmd.args(args).env_remove("DCOSET_PRIMES");
    if let Some(p) = primes {
        cmd.env("DCOSET_PRIMES", p);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const MAT: &str = "a11,a12,a21,a22";
const PI: &str = "a21,a22,a11*a22-a12*a21";
const LEFT_U: &str = "a11+l*a21,a12+l*a22,a21,a22";

#[test]
fn member_of_unit_ideal() {
    let (code, out, _) = dcoset(&["member", "--ring", "x,y", "--ideal", "x,1-x", "--poly", "1"]);
    assert_eq!((code, out.trim()), (0, "true"));
    let (code, out, _) = dcoset(&["member", "--ring", "x,y", "--ideal", "x*y-1", "--poly", "x"]);
    assert_eq!((code, out.trim()), (0, "false"));
}

#[test]
fn algebra_verbs() {
    let (_, out, _) = dcoset(&["gb", "--ring", "x,y", "--order", "lex", "--ideal", "x^2-y, x*y-1"]);
    assert_eq!(out, "y^3 - 1\nx - y^2\n");
    let (_, out, _) = dcoset(&["radmember", "--ring", "x,y", "--ideal", "x^2", "--poly", "x"]);
    assert_eq!(out.trim(), "true");
    let (_, out, _) = dcoset(&["saturate", "--ring", "x,y", "--ideal", "x*y, x^2", "--by", "x"]);
    assert_eq!(out.trim(), "(1)");
    let (_, out, _) = dcoset(&["eliminate", "--ring", "x,y,t", "--ideal", "x-t^2, y-t^3", "--drop", "t"]);
    assert_eq!(out.trim(), "(x^3 - y^2)");
}

#[test]
fn image_and_fibers() {
    let (_, out, _) = dcoset(&["image", "--ring", MAT, "--map", PI, "--target", "b21,b22,d"]);
    assert_eq!(out.trim(), "(0)");
    let fiber = |pt: &str| {
        dcoset(&[
            "fiber",
            "--ring",
            MAT,
            "--map",
            PI,
            "--target",
            "b21,b22,d",
            "--point",
            pt,
        ])
        .1
    };
    assert_eq!(fiber("0,0,1").trim(), "false");
    assert_eq!(fiber("0,0,0").trim(), "true");
    assert_eq!(fiber("1/2,0,-3").trim(), "true");
}

#[test]
fn orbits() {
    let orbit = |pt: &str, to: Option<&str>| {
        let mut args = vec![
            "orbit",
            "--ring",
            MAT,
            "--params",
            "l",
            "--action",
            LEFT_U,
            "--identity",
            "0",
            "--point",
            pt,
        ];
        if let Some(t) = to {
            args.extend(["--to", t]);
        }
        dcoset(&args).1.trim().to_string()
    };
    assert_eq!(orbit("1,0,0,0", None), "(a22, a21, a12, a11 - 1)");
    assert_eq!(orbit("0,0,1,0", Some("5,0,1,0")), "true");
    assert_eq!(orbit("1,0,0,0", Some("2,0,0,0")), "false");
}

#[test]
fn exit_codes_follow_verdicts() {
    for s in ["background", "example1", "example2", "example3"] {
        assert_eq!(dcoset(&["verify", s]).0, 0, "{s}");
        assert_eq!(dcoset(&["verify", s, "--mutated"]).0, 1, "{s} mutated");
    }
    assert_eq!(dcoset(&["oracle", "example1", "--prime", "3"]).0, 0);
    assert_eq!(dcoset(&["oracle", "example1", "--prime", "3", "--mutated"]).0, 1);
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = dcoset(&["gb", "--ring", "x", "--ideal", "x^-1"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 2"), "{err}");
    assert_eq!(dcoset(&["member", "--ring", "x", "--ideal", "z", "--poly", "x"]).0, 2);
    assert_eq!(dcoset(&["verify", "example9"]).0, 2);
    assert_eq!(dcoset(&["oracle", "example1", "--prime", "4"]).0, 2);
    assert_eq!(dcoset(&["bogus"]).0, 2);
    assert_eq!(dcoset(&["verify"]).0, 2);
}

#[test]
fn json_reports_are_stable() {
    let (code, a, _) = dcoset(&["verify", "--all", "--format", "json"]);
    let (_, b, _) = dcoset(&["verify", "--all", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for r in reports {
        assert_eq!(r["verdict"], "pass");
        for c in r["checks"].as_array().unwrap() {
            let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
            assert_eq!(keys, ["detail", "id", "paper_locus", "status"]);
        }
    }
    let (_, one, _) = dcoset(&["verify", "example2", "--format", "json"]);
    assert!(serde_json::from_str::<Value>(&one).unwrap().is_object());
}

#[test]
fn text_report_shape() {
    let (_, out, _) = dcoset(&["verify", "example1"]);
    assert!(out.starts_with("scenario: example1"));
    assert!(out.trim_end().ends_with("verdict: pass"));
    assert!(out.contains("[pass] fixed-pair-collapsed"));
}

#[test]
fn catalog_lists_every_scenario() {
    let (code, out, _) = dcoset(&["catalog", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["scenario"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["background", "example1", "example2", "example3"]);
}

#[test]
fn oracle_primes_from_environment() {
    let (code, out, _) = dcoset_env(&["oracle", "example3"], Some("3,5"));
    assert_eq!(code, 0);
    assert!(out.contains("over F3") && out.contains("over F5") && !out.contains("over F7"));
    let (code, out, _) = dcoset(&["oracle", "example1"]);
    assert_eq!(code, 0);
    assert!(out.contains("over F7"));
    assert_eq!(dcoset_env(&["oracle", "example1"], Some("3,x")).0, 2);
}
