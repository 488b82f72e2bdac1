use std::io::Write;
use std::process::{Command, Output};

use fracquat::canonical::normalize;
use fracquat::{parse, Frame};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracquat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn spec_file(suffix: &str, body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn apply_structured(spec: &tempfile::NamedTempFile, op: &str) -> Value {
    let path = spec.path().to_str().unwrap();
    let out = run(&[
        "apply",
        "--spec",
        path,
        "--op",
        op,
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    serde_json::from_str(stdout(&out).trim()).unwrap()
}

fn components(doc: &Value) -> Vec<String> {
    doc["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect()
}

fn same(frame: Frame, a: &str, b: &str) -> bool {
    let n = |t: &str| normalize(&parse(t, frame).unwrap()).unwrap();
    n(a) == n(b)
}

#[test]
fn apply_laplacian_of_radial_power() {
    let spec = spec_file(
        ".json",
        r#"{"alpha": 0.5, "frame": "cylindrical", "components": {"f0": "P(r,1)"}}"#,
    );
    let doc = apply_structured(&spec, "laplacian");
    assert_eq!(components(&doc), ["P(r,-1)", "0", "0", "0"]);
    assert_eq!(doc["operator"], "laplacian");
    assert_eq!(doc["frame"], "cylindrical");

    let out = run(&[
        "apply",
        "--spec",
        spec.path().to_str().unwrap(),
        "--op",
        "laplacian",
    ]);
    assert_eq!(stdout(&out), "f0 = P(r,-1)\nf1 = 0\nf2 = 0\nf3 = 0\n");
}

#[test]
fn apply_to_zero_field_gives_zero() {
    for frame in ["cartesian", "cylindrical", "spherical"] {
        let spec = spec_file(".toml", &format!("alpha = 0.7\nframe = \"{frame}\"\n"));
        for op in ["mt", "mt-right", "laplacian", "bitsadze", "helmholtz"] {
            let doc = apply_structured(&spec, op);
            assert_eq!(components(&doc), ["0", "0", "0", "0"], "{frame} {op}");
        }
    }
}

#[test]
fn apply_mt_to_abstract_cylindrical_field() {
    let spec = spec_file(
        ".toml",
        "alpha = 0.5\nframe = \"cylindrical\"\n[components]\nf0 = \"f0\"\nf1 = \"f1\"\nf2 = \"f2\"\nf3 = \"f3\"\n",
    );
    let got = components(&apply_structured(&spec, "mt"));
    let expected = [
        "-(d(f1,r) + P(r,-1)*d(f2,theta) + f1*P(r,-1) + d(f3,z))",
        "d(f0,r) + P(r,-1)*d(f3,theta) - d(f2,z)",
        "P(r,-1)*d(f0,theta) + d(f1,z) - d(f3,r)",
        "d(f0,z) + d(f2,r) - P(r,-1)*d(f1,theta) + f2*P(r,-1)",
    ];
    for k in 0..4 {
        assert!(
            same(Frame::Cylindrical, &got[k], expected[k]),
            "f{k}: {}",
            got[k]
        );
    }
}

#[test]
fn apply_helmholtz_to_null_solution() {
    let formal = spec_file(
        ".json",
        r#"{"alpha": 0.5, "frame": "cylindrical", "lambda": "formal", "components": {"f0": "Ea(i*lam, z)"}}"#,
    );
    assert_eq!(
        components(&apply_structured(&formal, "helmholtz")),
        ["0", "0", "0", "0"]
    );
    let fixed = spec_file(
        ".json",
        r#"{"alpha": 0.5, "frame": "spherical", "lambda": 3, "components": {"f0": "Ea(i*lam, r)"}}"#,
    );
    let doc = apply_structured(&fixed, "helmholtz");
    assert_eq!(doc["lambda"], "3");
    // not a null solution in the spherical frame: the 2/r term survives
    assert!(same(
        Frame::Spherical,
        &components(&doc)[0],
        "6*i*P(r,-1)*Ea(3*i, r)"
    ));
}

#[test]
fn apply_rejects_bad_specs() {
    for body in [
        r#"{"alpha": 0, "frame": "cartesian"}"#,
        r#"{"alpha": 0.5, "frame": "polar"}"#,
        r#"{"alpha": 0.5, "frame": "cartesian", "components": {"f1": "P(x,1"}}"#,
        r#"{"alpha": 0.5, "frame": "cartesian", "colour": "red"}"#,
        "not json",
    ] {
        let spec = spec_file(".json", body);
        let out = run(&[
            "apply",
            "--spec",
            spec.path().to_str().unwrap(),
            "--op",
            "mt",
        ]);
        assert_eq!(code(&out), 2, "{body}");
        assert!(stderr(&out).starts_with("error:"), "{body}");
    }
    let spec = spec_file(
        ".json",
        r#"{"alpha": 0.5, "frame": "cartesian", "components": {"f1": "P(x,1"}}"#,
    );
    let out = run(&[
        "apply",
        "--spec",
        spec.path().to_str().unwrap(),
        "--op",
        "mt",
    ]);
    assert!(stderr(&out).contains("position"), "{}", stderr(&out));
    let out = run(&["apply", "--spec", "/nonexistent/spec.json", "--op", "mt"]);
    assert_eq!(code(&out), 2);
    let out = run(&[
        "apply",
        "--spec",
        spec.path().to_str().unwrap(),
        "--op",
        "curl",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_all_streams_fourteen_passing_reports() {
    let out = run(&["verify"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let reports: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 14);
    for r in &reports {
        assert_eq!(r["pass"], true, "{r}");
        assert_eq!(r["mode"], "derivation");
        assert_eq!(r["residuals"].as_array().unwrap().len(), 4);
    }
    let explicit = run(&["verify", "all", "--frame", "all"]);
    assert_eq!(stdout(&explicit), stdout(&out));
}

#[test]
fn verify_single_identity_and_frame() {
    let out = run(&["verify", "mt_squared", "--frame", "cylindrical"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let r: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(r["identity"], "mt_squared");
    assert_eq!(r["frame"], "cylindrical");
    assert_eq!(r["residuals"], serde_json::json!(["0", "0", "0", "0"]));

    let out = run(&["verify", "bitsadze_factorization", "--format", "text"]);
    assert_eq!(
        stdout(&out),
        "PASS bitsadze_factorization cylindrical\nPASS bitsadze_factorization spherical\n"
    );
}

#[test]
fn verify_unknown_identity_is_a_usage_error() {
    let out = run(&["verify", "nonsense", "--frame", "cylindrical"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("nonsense"));
    assert_eq!(code(&run(&["verify", "all", "--frame", "polar"])), 2);
}

fn series_value(args: &[&str]) -> f64 {
    let out = run(args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let (value, terms) = text.trim().split_once(" (terms: ").unwrap();
    assert!(terms.trim_end_matches(')').parse::<usize>().unwrap() > 0);
    value.parse().unwrap()
}

#[test]
fn series_values() {
    let e = series_value(&["series", "Ea", "--alpha", "1", "--u", "1", "--tol", "1e-12"]);
    assert!((e - std::f64::consts::E).abs() <= 1e-12, "{e}");
    assert_eq!(
        series_value(&["series", "sina", "--alpha", "0.4", "--u", "0"]),
        0.0
    );
    let half = series_value(&[
        "series", "Ea", "--alpha", "0.5", "--u", "1", "--tol", "1e-9",
    ]);
    assert!((half - 5.00898008076228).abs() <= 1e-9, "{half}");
    let c = series_value(&["series", "cosa", "--alpha", "1", "--u", "-2"]);
    assert!((c - 2f64.cos()).abs() <= 1e-12);
}

#[test]
fn series_structured_output() {
    let out = run(&[
        "series",
        "Ea",
        "--alpha",
        "1",
        "--u",
        "0+1i",
        "--format",
        "structured",
    ]);
    let doc: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!((doc["value"]["re"].as_f64().unwrap() - 1f64.cos()).abs() < 1e-12);
    assert!((doc["value"]["im"].as_f64().unwrap() - 1f64.sin()).abs() < 1e-12);
    assert!(doc["terms"].as_u64().unwrap() > 0);
}

#[test]
fn series_failures() {
    let out = run(&["series", "Ea", "--alpha", "0.5", "--u", "1e6"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("converge"));
    assert_eq!(
        code(&run(&[
            "series", "Ea", "--alpha", "0.5", "--u", "1", "--tol", "0"
        ])),
        2
    );
    assert_eq!(
        code(&run(&["series", "Ea", "--alpha", "1.5", "--u", "1"])),
        2
    );
    assert_eq!(
        code(&run(&["series", "tan", "--alpha", "1", "--u", "1"])),
        2
    );
}

#[test]
fn diff_in_derivation_mode() {
    let out = run(&["diff", "P(r,-1)", "--var", "r", "--frame", "cylindrical"]);
    assert_eq!(stdout(&out).trim(), "-P(r,-2)");
    let out = run(&[
        "diff",
        "P(r,2)",
        "--var",
        "r",
        "--frame",
        "spherical",
        "--order",
        "2",
    ]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = run(&["diff", "P(r,1)*f1", "--var", "r", "--frame", "cylindrical"]);
    assert!(same(
        Frame::Cylindrical,
        stdout(&out).trim(),
        "f1 + P(r,1)*d(f1,r)"
    ));
    let out = run(&[
        "diff",
        "sina(theta)",
        "--var",
        "z",
        "--frame",
        "cylindrical",
    ]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn diff_in_gamma_mode() {
    let args = ["--var", "x", "--frame", "cartesian", "--mode", "gamma"];
    let d = |e: &str| {
        let mut argv = vec!["diff", e];
        argv.extend(args);
        let out = run(&argv);
        (code(&out), stdout(&out).trim().to_string())
    };
    assert_eq!(d("P(x,3) - 2*P(x,1) + 5"), (0, "-2 + P(x,2)".to_string()));
    assert_eq!(d("P(x,0)"), (0, "0".to_string()));
    assert_eq!(d("P(x,2)*P(x,1)").0, 2);
    assert_eq!(d("P(x,-1)").0, 2);
    assert_eq!(d("sina(x)").0, 2);
}

#[test]
fn diff_usage_errors() {
    assert_eq!(
        code(&run(&[
            "diff",
            "P(r,1)",
            "--var",
            "x",
            "--frame",
            "cylindrical"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "diff",
            "P(r,1",
            "--var",
            "r",
            "--frame",
            "cylindrical"
        ])),
        2
    );
    let zero_order = run(&[
        "diff",
        "P(r,1)",
        "--var",
        "r",
        "--frame",
        "cylindrical",
        "--order",
        "0",
    ]);
    assert_eq!(code(&zero_order), 2);
}

#[test]
fn eval_at_a_point() {
    let out = run(&[
        "eval",
        "P(r,2)",
        "--frame",
        "cylindrical",
        "--alpha",
        "0.5",
        "--at",
        "r=2",
    ]);
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 2.0).abs() < 1e-12);

    let out = run(&[
        "eval",
        "lam*f1 + d(f1,r)",
        "--frame",
        "cylindrical",
        "--alpha",
        "1",
        "--lam",
        "2",
        "--bind",
        "f1=3",
        "--bind",
        "d(f1,r)=0.5",
    ]);
    assert_eq!(stdout(&out).trim(), "6.5");

    let out = run(&[
        "eval",
        "Ea(i,z)",
        "--frame",
        "cylindrical",
        "--alpha",
        "1",
        "--at",
        "z=1",
    ]);
    let text = stdout(&out);
    let (re, im) = text.trim().trim_end_matches('i').split_once('+').unwrap();
    assert!((re.parse::<f64>().unwrap() - 1f64.cos()).abs() < 1e-12);
    assert!((im.parse::<f64>().unwrap() - 1f64.sin()).abs() < 1e-12);
}

#[test]
fn eval_errors() {
    let unbound = run(&["eval", "P(r,1)", "--frame", "cylindrical", "--alpha", "0.5"]);
    assert_eq!(code(&unbound), 1);
    let singular = run(&[
        "eval",
        "P(r,-1)",
        "--frame",
        "cylindrical",
        "--alpha",
        "0.5",
        "--at",
        "r=0",
    ]);
    assert_eq!(code(&singular), 1);
    let parse_error = run(&[
        "eval",
        "P(r,2)+(",
        "--frame",
        "cylindrical",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(code(&parse_error), 2);
    assert!(
        stderr(&parse_error).contains("position 8"),
        "{}",
        stderr(&parse_error)
    );
    let bad_point = run(&[
        "eval",
        "1",
        "--frame",
        "cylindrical",
        "--alpha",
        "0.5",
        "--at",
        "q=1",
    ]);
    assert_eq!(code(&bad_point), 2);
}
