use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rookwreath"));
    c.env_remove("ROOKWREATH_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn validate(schema: &str, value: &Value) {
    let path = manifest().join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = compiled.validate(value) {
        let messages: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{value} violates the schema: {messages:?}");
    };
}

fn json_of(args: &[&str], schema: &str) -> (Value, i32) {
    let o = run(args);
    let value: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    validate(schema, &value);
    (value, o.status.code().unwrap())
}

#[test]
fn emit_matches_golden_files() {
    let golden = manifest().join("../core/tests/golden");
    for (kind, file) in [("r-min", "bicyclic-r-min-2.txt"), ("r-min-small", "bicyclic-r-min-small-2.txt")] {
        let o = run(&["emit", "--kind", kind, "--monoid", "bicyclic", "--n", "2", "--format", "text"]);
        assert!(o.status.success());
        assert_eq!(o.stdout, std::fs::read(golden.join(file)).unwrap(), "{kind}");
    }
}

#[test]
fn verify_r_in_three() {
    let o = run(&["verify", "--kind", "r-in", "--monoid", "trivial", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("size: 34 / 34"), "{text}");
    assert!(text.ends_with("verdict: pass\n"));
}

#[test]
fn word_problem_equal() {
    let o = run(&[
        "word-problem", "--kind", "r-min", "--monoid", "c2", "--n", "2", "--lhs", "s1 x@1", "--rhs", "x@2 s1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "equal\n");
    let (v, _) = json_of(
        &[
            "word-problem", "--kind", "r-min", "--monoid", "c2", "--n", "2", "--lhs", "s1 x@1", "--rhs", "x@1 s1",
            "--format", "json",
        ],
        "word-problem.schema.json",
    );
    assert_eq!(v["answer"], "different");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--kind", "nope", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--kind", "r-in"]).status.code(), Some(1));
    assert_eq!(run(&["emit", "--kind", "r-in", "--n", "99"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--kind", "r-min", "--monoid", "bicyclic", "--n", "2"]).status.code(), Some(1));
    let fail = run(&["verify", "--kind", "r-in", "--n", "2", "--extra", "s1 s1=e1"]);
    assert_eq!(fail.status.code(), Some(2));
    let budget = run(&["verify", "--kind", "r-in", "--n", "3", "--budget", "5"]);
    assert_eq!(budget.status.code(), Some(3));
    let env = bin()
        .args(["verify", "--kind", "r-in", "--n", "3"])
        .env("ROOKWREATH_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_outputs_follow_the_schemas() {
    let (v, code) = json_of(
        &["emit", "--kind", "omega-mi", "--monoid", "c2", "--n", "2", "--format", "json"],
        "presentation.schema.json",
    );
    assert_eq!((code, v["flavor"].as_str()), (0, Some("category")));
    for (kind, monoid, n) in [("r-min", "c2", "2"), ("omega-mi", "trivial", "2"), ("xi-mi", "c2", "2"), ("r-sing-tuples", "c2", "2")] {
        let (v, code) = json_of(
            &["verify", "--kind", kind, "--monoid", monoid, "--n", n, "--format", "json"],
            "report.schema.json",
        );
        assert_eq!((code, v["verdict"].as_str()), (0, Some("pass")), "{kind}");
    }
    let (v, _) = json_of(
        &["verify", "--kind", "r-in", "--n", "2", "--extra", "s1 s1=e1", "--format", "json"],
        "report.schema.json",
    );
    assert_eq!(v["soundness"]["failure"]["schema"], "extra");
    let (v, _) = json_of(
        &["eval", "--kind", "r-min", "--monoid", "c2", "--n", "2", "--expr", "x@1 e2", "--format", "json"],
        "eval.schema.json",
    );
    assert_eq!(v["value"]["tuple"], serde_json::json!([2, 0]));
    assert_eq!(v["value"]["map"]["images"], serde_json::json!([1, 0]));
    let (v, _) = json_of(
        &["enumerate", "--monoid", "c2", "--m", "2", "--list", "--format", "json"],
        "enumerate.schema.json",
    );
    assert_eq!((v["count"].as_u64(), v["elements"].as_array().map(Vec::len)), (Some(17), Some(17)));
    let (v, _) = json_of(
        &["normal-form", "--kind", "r-min", "--monoid", "c2", "--n", "2", "--expr", "s1 x@1 s1", "--format", "json"],
        "normal-form.schema.json",
    );
    assert_eq!(v["normal_form"], "x@2");
    let (v, _) = json_of(
        &["translate", "--map", "psi1", "--n", "2", "--monoid", "c2", "--expr", "e2", "--format", "json"],
        "translate.schema.json",
    );
    assert_eq!(v["output"], "s1 e s1");
}

#[test]
fn translations_and_normal_forms() {
    let t = |args: &[&str]| stdout(&run(args)).trim_end().to_string();
    assert_eq!(t(&["translate", "--map", "psi2", "--n", "3", "--monoid", "c2", "--expr", "e s1 x"]), "e1 s1 x@1");
    assert_eq!(t(&["translate", "--map", "hat", "--n", "2", "--expr", "lam1"]), "(p i1 Ubar)");
    assert_eq!(t(&["translate", "--map", "plus", "--n", "2", "--expr", "s1:2"]), "s1:3");
    assert_eq!(t(&["translate", "--map", "reverse", "--n", "3", "--expr", "s1 s2"]), "s2 s1");
    assert_eq!(t(&["normal-form", "--kind", "r-in", "--n", "2", "--expr", "s1 s1 e2"]), "e2");
    assert_eq!(t(&["normal-form", "--kind", "r-in-popova", "--n", "2", "--expr", "s1 e s1"]), "s1 e s1");
    let word = "f1,2 f2,3 f1,2 f1,3 f2,1";
    let normal = t(&["normal-form", "--kind", "r-sing-in", "--n", "3", "--expr", word]);
    assert!(normal.split(' ').count() <= word.split(' ').count());
    assert_eq!(t(&["normal-form", "--kind", "r-sing-in", "--n", "3", "--expr", &normal]), normal);
    let value = |w: &str| t(&["eval", "--kind", "r-sing-in", "--n", "3", "--expr", w]);
    assert_eq!(value(&normal), value(word));
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn monoid_files() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "c2table.json", r#"{"size": 2, "identity": 0, "table": [[0, 1], [1, 0]]}"#);
    let o = run(&["verify", "--kind", "r-min", "--monoid", table.to_str().unwrap(), "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("monoid: c2table"));
    let pres = write(dir.path(), "free.json", r#"{"alphabet": ["a"], "relations": []}"#);
    let o = run(&["emit", "--kind", "r-min-small", "--monoid", pres.to_str().unwrap(), "--n", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("generators: s1 e a\n"));
    let both = write(
        dir.path(),
        "both.json",
        r#"{"name": "z2", "monoid": {"size": 2, "identity": 0, "table": [[0, 1], [1, 0]]},
            "presentation": {"alphabet": ["g"], "relations": [[["g", "g"], []]], "evaluation": [1]}}"#,
    );
    let o = run(&["verify", "--kind", "r-min-small", "--monoid", both.to_str().unwrap(), "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("size: 139 / 139"));
    let bad = write(dir.path(), "bad.json", r#"{"size": 2, "identity": 0, "table": [[0, 0], [1, 1]]}"#);
    assert_eq!(run(&["emit", "--kind", "r-min", "--monoid", bad.to_str().unwrap(), "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["emit", "--kind", "r-min", "--monoid", "missing.json", "--n", "2"]).status.code(), Some(1));
}

#[test]
fn empty_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "empty.json", r#"{"cells": []}"#);
    validate("matrix-config.schema.json", &serde_json::json!({"cells": []}));
    let (v, code) = json_of(&["matrix", config.to_str().unwrap(), "--format", "json"], "matrix-report.schema.json");
    assert_eq!(code, 0);
    assert_eq!(v["cells"], serde_json::json!([]));
}

#[test]
fn matrix_isolates_failures() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c3.json", r#"{"size": 3, "identity": 0, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}"#);
    let config_text = r#"{"cells": [
        {"kind": "r-in", "monoid": "trivial", "n": 3},
        {"kind": "r-min", "monoid": "c2", "n": 2, "extra_relations": [["x@1", "1"]]},
        {"kind": "r-min", "monoid": "c3.json", "n": 2},
        {"kind": "r-min", "monoid": "bicyclic", "n": 2},
        {"kind": "r-sing-in", "monoid": "trivial", "n": 3, "budget": 3}
    ]}"#;
    let config_value: Value = serde_json::from_str(config_text).unwrap();
    validate("matrix-config.schema.json", &config_value);
    let config = write(dir.path(), "matrix.json", config_text);
    let (v, code) = json_of(&["matrix", config.to_str().unwrap(), "--format", "json"], "matrix-report.schema.json");
    assert_eq!(code, 2);
    let cells = v["cells"].as_array().unwrap();
    let indices: Vec<u64> = cells.iter().map(|c| c["index"].as_u64().unwrap()).collect();
    assert_eq!(indices, [0, 1, 2, 3, 4]);
    assert_eq!(cells[0]["report"]["verdict"], "pass");
    assert_eq!(cells[1]["report"]["verdict"], "fail");
    assert_eq!(cells[2]["report"]["enumerated_size"], 31);
    assert!(cells[3]["error"].as_str().unwrap().contains("no evaluation"));
    assert_eq!(cells[4]["report"]["verdict"], "inconclusive");
    assert_eq!(v["summary"], serde_json::json!({"pass": 2, "fail": 1, "inconclusive": 1, "error": 1}));

    let text = run(&["matrix", config.to_str().unwrap()]);
    assert!(stdout(&text).ends_with("5 cells: 2 pass, 1 fail, 1 inconclusive, 1 error\n"));
}

#[test]
fn shipped_acceptance_matrix_passes() {
    let config = manifest().join("matrices/acceptance.json");
    let (v, code) = json_of(&["matrix", config.to_str().unwrap(), "--format", "json"], "matrix-report.schema.json");
    assert_eq!(code, 0, "{}", v["summary"]);
    assert_eq!(v["summary"]["fail"], 0);
}
