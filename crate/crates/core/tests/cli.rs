use std::process::Command;

use curvelog::catalog::corpus;
use curvelog::cli::{exit_code, parse_poly, EXIT_IDENTITY_VIOLATION};
use curvelog::logideals::LogError;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_curvelog")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn cusp_tau_report() {
    let v = json(&["report", "--poly", "y^3+x^2", "--what", "tau", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["input"]["w"], 2);
    assert_eq!(v["invariants"]["w"], 2);
    assert_eq!(v["invariants"]["tau_log"], 2);
    assert_eq!(v["invariants"]["tes_log"], 2);
    assert!(v.get("resolution").is_none());
}

#[test]
fn full_report_sections() {
    let v = json(&["report", "--poly", "y^2 + x^3", "--format", "json"]);
    for key in ["input", "invariants", "ideals", "deformation", "resolution", "chain"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["deformation"]["template"], "y*(y + t1*x + t2) + x^3");
    assert_eq!(v["deformation"]["k"], 2);
    let nodes = v["resolution"]["nodes"].as_array().unwrap();
    let mults: Vec<i64> = nodes.iter().filter(|n| n["essential"] == true).map(|n| n["multiplicity"].as_i64().unwrap()).collect();
    assert_eq!(mults, vec![3, 2, 1]);
    // Generators are printed in the input grammar.
    for g in v["ideals"]["ea_log"].as_array().unwrap() {
        parse_poly(g.as_str().unwrap()).unwrap();
    }
}

#[test]
fn ideals_of_a4_tangent_model() {
    let v = json(&["report", "--poly", "y*(y+2x^2+x^3)+x^4", "--what", "ideals", "--format", "json"]);
    assert_eq!(v["ideals"]["ea_log"], serde_json::json!(["x^3", "y + x^2"]));
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["report", "--poly", "(y+x^2)(y+x^5)", "--format", "json"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["corpus", "--seed", "3", "--count", "8", "--format", "json"];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, run(&args).1);
}

#[test]
fn invalid_input_exits_with_two() {
    let cases = [
        ("x*y*y", "non-reduced germ"),
        ("y^2 + z", "unknown variable z"),
        ("1.5x + y", "syntax error"),
        ("x^2 + y + 1", "origin"),
        ("x*y + y^2", "divisor"),
        ("0", "zero polynomial"),
    ];
    for (poly, message) in cases {
        let (code, stdout, stderr) = run(&["report", "--poly", poly]);
        assert_eq!(code, 2, "{poly}");
        assert!(stdout.is_empty());
        assert!(stderr.contains(message), "{poly}: {stderr}");
    }
    assert_eq!(run(&["report"]).0, 2);
    assert_eq!(run(&["verify-catalog", "--wmax", "7"]).0, 2);
}

#[test]
fn identity_violations_map_to_three() {
    assert_eq!(exit_code(&LogError::IdentityViolation("x".into())), EXIT_IDENTITY_VIOLATION);
}

#[test]
fn dot_file_is_written() {
    let dir = std::env::temp_dir().join(format!("curvelog-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cusp.dot");
    let (code, _, stderr) = run(&["report", "--poly", "y^2+x^3", "--what", "tes", "--dot", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stderr}");
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("m=3, rtt=3, free, ess, deg=1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_catalog_reports_every_entry() {
    let (code8, out8, _) = run(&["verify-catalog", "--wmax", "8"]);
    let (code10, out10, _) = run(&["verify-catalog"]);
    let count = |s: &str| {
        s.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
            .filter(|l| !l.contains("w-stability") && !l.contains("excluded parameter"))
            .count()
    };
    assert!(count(&out8) < count(&out10));
    for (code, out) in [(code8, &out8), (code10, &out10)] {
        let any_fail = out.lines().any(|l| l.starts_with("FAIL"));
        assert_eq!(code, if any_fail { 1 } else { 0 });
        assert!(out.trim_end().ends_with("passed"));
    }
    let v: Value = serde_json::from_str(&run(&["verify-catalog", "--format", "json"]).1).unwrap();
    assert!(v["report"]["entries"].as_array().unwrap().len() > 50);
}

#[test]
fn w_stability_check() {
    let v = json(&["report", "--poly", "y*x + x^3", "--what", "tau", "--format", "json", "--wmax-check", "7"]);
    assert_eq!(v["w_stability"]["stable"], true);
    assert_eq!(v["w_stability"]["values"].as_array().unwrap().len(), 5);
}

#[test]
fn text_report_uses_ascii_names() {
    let (code, out, _) = run(&["report", "--poly", "y^2+x^5"]);
    assert_eq!(code, 0);
    for needle in ["tau_log = 4", "tes_log = 3", "delta = 2", "I^ea_log = <x^4, y>"] {
        assert!(out.contains(needle), "{needle} in {out}");
    }
}

#[test]
fn corpus_polynomials_round_trip() {
    for g in corpus(10, 11, 30) {
        assert_eq!(parse_poly(&g.poly.to_text()).unwrap(), g.poly);
    }
}
