use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../inputs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semidualize"))
        .args(args)
        .env_remove("SEMIDUALIZE_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn path_str(name: &str) -> String {
    input(name).display().to_string()
}

fn status_of<'a>(report: &'a Value, id: &str) -> &'a str {
    report["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no condition {id}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn ring_analyze_reports_socle_and_gorenstein_flag() {
    for (file, socle, gorenstein, dim) in [
        ("e3.json", 2, false, 3),
        ("e2.json", 1, true, 2),
        ("e9.json", 4, false, 9),
        ("e9_product.json", 4, false, 9),
    ] {
        let out = run(&["--format", "json", "--bound", "4", "ring-analyze", &path_str(file)]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let v = json(&out);
        assert_eq!(v["summary"]["socle_dim"], socle, "{file}");
        assert_eq!(v["summary"]["gorenstein"], gorenstein, "{file}");
        assert_eq!(v["summary"]["dim"], dim, "{file}");
        assert_eq!(v["bass_numbers"].as_array().unwrap().len(), 5, "{file}");
    }
    let out = run(&["--bound", "4", "ring-analyze", &path_str("e9.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("socle dimension: 4"), "{text}");
    assert!(text.contains("bass numbers (0..=4): [4, 12, 33, 84, 204]"), "{text}");
}

#[test]
fn check_semidualizing_classifies_and_sets_exit_code() {
    let cases = [
        ("e3.json", "dual(regular)", 0, "dualizing"),
        ("e3.json", "regular", 0, "free"),
        ("e3.json", "k", 1, "not_semidualizing"),
        ("e9_product.json", "C", 0, "nontrivial"),
    ];
    for (file, module, code, class) in cases {
        let out = run(&["--format", "json", "check-semidualizing", &path_str(file), module]);
        assert_eq!(out.status.code(), Some(code), "{file} {module}");
        let v = json(&out);
        assert_eq!(v["report"]["classification"], class, "{file} {module}");
    }
    let v = json(&run(&["--format", "json", "check-semidualizing", &path_str("e9_product.json"), "C"]));
    assert_eq!(v["report"]["module_dim"], 9);
    assert_eq!(v["report"]["min_generators"], 2);
    assert_eq!(v["report"]["dagger_min_generators"], 2);
}

#[test]
fn roundtrip_on_product_input_passes() {
    let out = run(&["--format", "json", "--bound", "5", "theorem", "roundtrip", &path_str("e9_product.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["direction"], "roundtrip");
    for c in v["conditions"].as_array().unwrap() {
        let s = c["status"].as_str().unwrap();
        assert!(s == "pass" || s == "certified_up_to", "{c}");
    }
    assert_eq!(status_of(&v, "dagger_recovered"), "pass");
    assert_eq!(status_of(&v, "module_recovered"), "pass");
}

#[test]
fn forward_on_gorenstein_quotients_fails_condition_two() {
    let out = run(&["--format", "json", "--bound", "3", "theorem", "forward", &path_str("gorenstein_quotients.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(status_of(&v, "2"), "fail");
    let failing: Vec<_> = v["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(failing.iter().all(|c| c.get("witness").is_some()));

    let text = run(&["--bound", "3", "theorem", "forward", &path_str("gorenstein_quotients.json")]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("condition (2): FAIL"), "{text}");
    assert!(text.contains("verdict: fail"), "{text}");
}

#[test]
fn backward_with_dualizing_module_is_rejected() {
    let out = run(&["theorem", "backward", &path_str("e3.json"), "--module", "dual(regular)"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--module"), "{err}");
}

#[test]
fn input_errors_exit_three_and_name_the_field() {
    let e3 = path_str("e3.json");
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["check-semidualizing", &e3, "hom(k)"], "module"),
        (vec!["check-semidualizing", &e3, "nonsense"], "nonsense"),
        (vec!["ring-analyze", "/nonexistent/input.json"], "/nonexistent/input.json"),
        (vec!["--prime", "12", "ring-analyze", &e3], "field.p"),
        (vec!["--cap", "2", "ring-analyze", &e3], "exceeds"),
        (vec!["--bound", "0", "ring-analyze", &e3], "bound"),
        (vec!["theorem", "forward", &e3], "ideals.I1"),
        (vec!["frobnicate"], ""),
    ];
    for (args, needle) in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn malformed_input_file_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"algebra": {"kind": "monomial_quotient", "vars": ["x"], "relations": ["x^2"]}, "extra": 1}"#).unwrap();
    let out = run(&["ring-analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let bad_ideal = dir.path().join("ideal.json");
    std::fs::write(
        &bad_ideal,
        r#"{"algebra": {"kind": "monomial_quotient", "vars": ["x"], "relations": ["x^2"]},
            "ideals": {"I1": ["z"], "I2": ["x"]}}"#,
    )
    .unwrap();
    let out = run(&["theorem", "forward", bad_ideal.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("ideals.I1[0]"));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = ["--format", "json", "--bound", "3", "theorem", "backward", &path_str("e9_product.json")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "json", "check-semidualizing", &path_str("e9_product.json"), "Cdagger"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("semidualize.toml");
    std::fs::write(&cfg, "bound = 2\nformat = \"json\"\n").unwrap();
    let with_env = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_semidualize"))
            .args(args)
            .env("SEMIDUALIZE_CONFIG", &cfg)
            .output()
            .unwrap()
    };
    let e3 = path_str("e3.json");
    let v = json(&with_env(&["ring-analyze", &e3]));
    assert_eq!(v["bound"], 2);
    assert_eq!(v["bass_numbers"].as_array().unwrap().len(), 3);
    let v = json(&with_env(&["--bound", "5", "ring-analyze", &e3]));
    assert_eq!(v["bound"], 5);
    let out = with_env(&["--format", "text", "ring-analyze", &e3]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("p: 32003"));

    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(with_env(&["ring-analyze", &e3]).status.code(), Some(3));
}

#[test]
fn prime_from_flag_overrides_input_file() {
    let e3 = path_str("e3.json");
    let v = json(&run(&["--format", "json", "--prime", "7", "ring-analyze", &e3]));
    assert_eq!(v["summary"]["p"], 7);
    let v = json(&run(&["--format", "json", "ring-analyze", &e3]));
    assert_eq!(v["summary"]["p"], 32003);
}
