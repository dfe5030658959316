use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn chgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = chgraph(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (code(&out), v)
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema")
}

fn validate(def: &str, value: &Value) {
    let text = std::fs::read_to_string(schema_dir().join("reports.schema.json")).unwrap();
    let mut schema: Value = serde_json::from_str(&text).unwrap();
    schema["$ref"] = json!(format!("#/$defs/{def}"));
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{def}: {errors:#?}");
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chgraph-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn johnson_complement_is_three_ch() {
    let (c, v) = run_json(&["check", "ch", "-k", "3", "--family", "johnson-c:7,2"]);
    assert_eq!(c, 0);
    validate("homogeneity", &v);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["vertices"], 21);
}

#[test]
fn hamming_classifies_as_locally_disjoint_cliques() {
    let (c, v) = run_json(&["check", "classify", "-k", "3", "--family", "hamming:2,4"]);
    assert_eq!(c, 0);
    validate("classify", &v);
    assert_eq!(v["case_label"], "(iv)");
    assert_eq!(v["case"], "locally_disjoint_cliques");
}

#[test]
fn cube_antipodal_quotient_is_k4_cover() {
    let (c, v) = run_json(&[
        "quotient",
        "--family",
        "cube:3",
        "--normal",
        "(0 7)(1 6)(2 5)(3 4)",
    ]);
    assert_eq!(c, 0);
    validate("quotient", &v);
    assert_eq!(v["quotient_vertices"], 4);
    assert_eq!(v["quotient_edges"], 6);
    assert_eq!(v["quotient_graph6"], "C~");
    assert_eq!(v["cover"], true);
}

#[test]
fn lemma22_on_ex83() {
    let (c, v) = run_json(&["cayley", "lemma22", "--family", "ex83:2"]);
    assert_eq!(c, 0);
    validate("lemma22", &v);
    assert_eq!(v["normalizer_order"], 72);
    assert_eq!(v["h_order"], 9);
    assert_eq!(v["aut_hs_order"], 8);
}

#[test]
fn construct_ex83_json() {
    let (c, v) = run_json(&["construct", "ex83:2", "--out", "json"]);
    assert_eq!(c, 0);
    validate("instance", &v);
    assert_eq!(v["n"], 9);
    assert_eq!(v["edges"].as_array().unwrap().len(), 18);
}

#[test]
fn halved_cube_exit_codes() {
    // Under its full automorphism group the halved 4-cube is K_{4[2]} and so 4-CH.
    let (c, v) = run_json(&["check", "ch", "-k", "4", "--family", "halfcube:4", "--group", "compute-aut"]);
    assert_eq!(c, 0);
    validate("homogeneity", &v);
    assert_eq!(v["group_order"], 384);

    let (c, v) = run_json(&["check", "ch", "-k", "4", "--family", "halfcube-induced:4"]);
    assert_eq!(c, 1);
    validate("homogeneity", &v);
    assert_eq!(v["witness_verified"], true);
}

#[test]
fn failing_properties_exit_one() {
    let (c, v) = run_json(&["check", "hom", "--family", "petersen"]);
    assert_eq!(c, 1);
    validate("homogeneity", &v);
    let (c, v) = run_json(&["cayley", "is-cayley", "--family", "petersen"]);
    assert_eq!(c, 1);
    validate("is_cayley", &v);
    assert_eq!(v["regular_subgroups"], json!([]));
}

#[test]
fn errors_exit_two() {
    for args in [
        &["check", "ch", "--family", "nonsense:1"][..],
        &["check", "ch", "-k", "9", "--family", "cube:3"],
        &["check", "ch"],
        &["quotient", "--family", "cube:3", "--normal", "(0 1)"],
        &["table2", "--row", "99"],
        &["suite", "-c", "13"],
        &["frobnicate"],
    ] {
        let out = chgraph(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn graph_file_needs_a_group_source() {
    let dir = scratch("graphfile");
    let path = dir.join("c5.g6");
    std::fs::write(&path, "Dhc\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&chgraph(&["check", "ch", "--graph", p])), 2);
    let (c, v) = run_json(&["check", "ch", "-k", "5", "--graph", p, "--group", "compute-aut"]);
    assert_eq!(c, 0);
    assert_eq!(v["group_order"], 10);
}

#[test]
fn construct_dir_round_trips() {
    let dir = scratch("construct");
    let d = dir.to_str().unwrap();
    let out = chgraph(&["construct", "linegraph:petersen", "--dir", d, "--out", "text"]);
    assert_eq!(code(&out), 0);
    let name = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|x| x == "json"))
        .expect("json written");
    let gens = name.with_extension("gens");
    let (c, v) = run_json(&[
        "check",
        "ch",
        "--graph",
        name.to_str().unwrap(),
        "--group",
        "file",
        "--group-file",
        gens.to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["group_order"], 120);
    let g6 = name.with_extension("g6");
    let (c, v) = run_json(&["check", "ch", "--graph", g6.to_str().unwrap(), "--group", "compute-aut"]);
    assert_eq!(c, 0);
    assert_eq!(v["vertices"], 15);
}

#[test]
fn golden_outputs() {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let g6 = stdout(&chgraph(&["construct", "hamming:2,4", "--out", "g6"]));
    assert_eq!(g6, std::fs::read_to_string(golden.join("hamming_2_4.g6")).unwrap());
    let dot = stdout(&chgraph(&["construct", "petersen", "--out", "dot"]));
    assert_eq!(dot, std::fs::read_to_string(golden.join("petersen.dot")).unwrap());
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["construct", "hamming:2,4"][..],
        &["check", "ch", "--family", "ex83:2"],
        &["check", "local", "--family", "hamming:2,4"],
        &["quotient", "--maximal", "--family", "cycle:6"],
        &["cayley", "lemma51", "--family", "ex82:2,2"],
        &["table2"],
    ] {
        let a = chgraph(args);
        let b = chgraph(&[&["--threads", "4"][..], args].concat());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn every_report_matches_schema() {
    let cases: &[(&str, &[&str])] = &[
        ("homogeneity", &["check", "csh", "--family", "petersen"]),
        ("homogeneity", &["check", "sethom", "--family", "cycle:5", "-k", "5"]),
        ("prop12", &["check", "prop12", "--family", "petersen"]),
        ("arc", &["check", "arc", "-s", "3", "--family", "petersen"]),
        ("local", &["check", "local", "--family", "hamming:2,4"]),
        ("quotient_maximal", &["quotient", "--maximal", "--family", "cycle:6"]),
        ("lemma51", &["cayley", "lemma51", "--family", "ex82:2,2"]),
        ("lemma51", &["cayley", "lemma51", "--family", "ex83:2"]),
        ("is_cayley", &["cayley", "is-cayley", "--family", "hamming:2,3"]),
        ("aut", &["cayley", "aut", "--family", "ex83:2"]),
        ("table2", &["table2"]),
        ("suite", &["suite", "-c", "1", "-c", "3", "--out", "json"]),
    ];
    for (def, args) in cases {
        let (_, v) = run_json(args);
        validate(def, &v);
    }
}

#[test]
fn text_output_for_suite() {
    let out = chgraph(&["suite", "-c", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("criterion  1 PASS"), "{text}");
    assert!(text.contains("1/1 criteria passed"));
}

#[test]
fn schema_rejects_malformed_reports() {
    let text = std::fs::read_to_string(schema_dir().join("reports.schema.json")).unwrap();
    let mut schema: Value = serde_json::from_str(&text).unwrap();
    schema["$ref"] = json!("#/$defs/homogeneity");
    let validator = jsonschema::validator_for(&schema).unwrap();
    let (_, good) = run_json(&["check", "ch", "-k", "4", "--family", "halfcube-induced:4"]);
    assert!(validator.is_valid(&good));
    let mut missing = good.clone();
    missing["witness"] = Value::Null;
    assert!(!validator.is_valid(&missing));
    let mut bad_mode = good;
    bad_mode["mode"] = json!("hyper");
    assert!(!validator.is_valid(&bad_mode));
}
