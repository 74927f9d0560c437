use std::process::Command;

use qres::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_OVERFLOW};
use serde_json::Value;

fn qres(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["qres"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn line<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
        .unwrap_or_else(|| panic!("no `{key}` line in\n{out}"))
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/../../docs/schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

#[test]
fn germ_on_a2() {
    let (code, out, _) = qres(&["germ", "x^2 - y^4", "--type", "X(2;1,1)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(line(&out, "δ^ω"), "1");
    assert_eq!(line(&out, "δ "), "2");
    assert_eq!(line(&out, "r^ω"), "1");
}

#[test]
fn germ_with_override() {
    let (code, out, _) = qres(&[
        "germ",
        "x*y + (x^3 - y^2)^2",
        "--type",
        "X(7;2,3)",
        "--weights",
        "(1,5)",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(line(&out, "δ^ω"), "1");
    assert!(
        out.contains("(p,q)=(1,5) e=7 ν=6 contribution 3/5"),
        "{out}"
    );
    assert!(out.contains("contribution 2/5"), "{out}");
}

#[test]
fn germ_qsmooth() {
    let (code, out, _) = qres(&["germ", "x", "--type", "X(5;1,2)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(line(&out, "δ^ω"), "2/5");
    assert_eq!(line(&out, "μ^ω"), "4/5");
}

#[test]
fn germ_errors() {
    assert_eq!(
        qres(&["germ", "x*y + (x^2 - y^3)^2", "--type", "X(7;2,3)"]).0,
        EXIT_INPUT
    );
    assert_eq!(qres(&["germ", "x^2*y"]).0, EXIT_INPUT);
    assert_eq!(qres(&["germ", "x^2 +* y"]).0, EXIT_INPUT);
    assert_eq!(qres(&["germ", "x", "--type", "X(4;2,2)"]).0, EXIT_INPUT);
    assert_eq!(qres(&["germ", "x", "--weights", "(1,"]).0, EXIT_INPUT);
    assert_eq!(qres(&["frobnicate"]).0, EXIT_INPUT);
}

#[test]
fn plain_mode_reports_leaf_correction() {
    let (code, out, _) = qres(&[
        "germ",
        "x*y + (x^3 - y^2)^2",
        "--type",
        "X(7;2,3)",
        "--weights",
        "(1,5)",
        "--mode",
        "plain",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(line(&out, "δ^ω"), "1");
    assert_eq!(line(&out, "leaf correction"), "2/5");
}

#[test]
fn germ_json_matches_schema() {
    let (code, out, _) = qres(&[
        "germ",
        "x*y + (x^3 - y^2)^2",
        "--type",
        "X(7;2,3)",
        "--json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&schema("germ-report.schema.json"), &v);
    assert_valid(&schema("resolution-tree.schema.json"), &v["tree"]);
    assert_eq!(v["report"]["delta_w"], "1/1");
}

#[test]
fn curve_examples() {
    let (code, out, _) = qres(&["curve", "x0*x1 - x2", "--w", "2,3,5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(line(&out, "genus"), "0");
    let (_, out, _) = qres(&["curve", "x0*x1*x2 + (x0^3 - x1^2)^2", "--w", "2,3,7"]);
    assert_eq!(line(&out, "genus"), "0");
    assert!(out.contains("δ^ω 1\n"), "{out}");
    let (_, out, _) = qres(&["curve", "x0^30 + x1^10 + x2^6 | 1,3,5"]);
    assert_eq!(line(&out, "genus"), "22");
}

#[test]
fn curve_json_matches_schema() {
    let (code, out, _) = qres(&["curve", "x0*x1 - x2^2", "--w", "3,5,4", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_valid(&schema("genus-report.schema.json"), &v);
    assert_eq!(v["genus"], "0/1");
}

#[test]
fn curve_errors() {
    assert_eq!(qres(&["curve", "x0 + x1", "--w", "1,2,3"]).0, EXIT_INPUT);
    assert_eq!(qres(&["curve", "x0 + x1"]).0, EXIT_INPUT);
    assert_eq!(qres(&["curve", "x0*x1 - x2", "--w", "2,4,6"]).0, EXIT_INPUT);
    let pts = [
        "curve",
        "x1^2*x0 - x2^2*x0 - x2^3",
        "--w",
        "1,1,1",
        "--points",
        "[1:1:1]",
    ];
    assert_eq!(qres(&pts).0, EXIT_INPUT);
}

#[test]
fn resolve_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("cusp.dot");
    let js = dir.path().join("cusp.json");
    let (code, _, _) = qres(&[
        "resolve",
        "y^2 - x^3",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        js.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let d = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(d.matches("[label=").count(), 2);
    assert!(d.contains("X(1;0,0) (2,3) e=1 ν=6"), "{d}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert_valid(&schema("resolution-tree.schema.json"), &v);
}

#[test]
fn resolve_is_deterministic() {
    let args = [
        "resolve",
        "(y^2 - 2*x^2)^2 - x^6",
        "--type",
        "X(1;0,0)",
        "--json",
        "-",
    ];
    let a = qres(&args).1;
    let b = qres(&args).1;
    assert_eq!(a, b);
    assert_valid(
        &schema("resolution-tree.schema.json"),
        &serde_json::from_str(&a).unwrap(),
    );
}

#[test]
fn resolve_errors() {
    assert_eq!(qres(&["resolve", "x^2*y", "--dot", "-"]).0, EXIT_INPUT);
    assert_eq!(qres(&["resolve", "x - y"]).0, EXIT_INPUT);
    assert_eq!(
        qres(&["resolve", "x - y", "--dot", "/nonexistent-dir/x.dot"]).0,
        4
    );
}

#[test]
fn check_lattice_passes() {
    let (code, out, _) = qres(&["check", "lattice"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("lattice"));
    assert!(out.contains(" ok"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qres");
    let st = Command::new(bin)
        .args(["germ", "x^2 - y^4", "--type", "X(2;1,1)"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(EXIT_OK));
    let st = Command::new(bin)
        .args(["germ", "(y^3 - 2*x^3)^2 + x^7"])
        .env("QRES_EXT_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(
        st.status.code(),
        Some(EXIT_OVERFLOW),
        "{}",
        String::from_utf8_lossy(&st.stderr)
    );
    let st = Command::new(bin).args(["germ"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_INPUT));
}
