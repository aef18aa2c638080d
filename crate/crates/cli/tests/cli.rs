use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn tensorial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorial"))
        .args(args)
        .env_remove("ETA_MAX_COSETS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn golden_reports() {
    let cases: [(&str, &[&str]); 6] = [
        ("tensor_c2_c2_trivial.json", &["tensor", "--builtin", "C2", "C2", "--trivial-actions"]),
        ("nu_c2.json", &["nu", "--builtin", "C2"]),
        ("nu_s3.json", &["nu", "--builtin", "S3"]),
        ("compat_d8.json", &["compat", "--builtin", "D8", "D8", "--conjugation"]),
        ("abelian_delta_2_4.json", &["abelian", "delta", "[2,4]"]),
        ("abelian_snf.json", &["abelian", "snf", "[[2,4],[6,8]]"]),
    ];
    for (file, args) in cases {
        let out = tensorial(args);
        assert!(out.status.success(), "{file}");
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(file), "{file}");
    }
}

#[test]
fn tensor_orders() {
    let r = json(&tensorial(&["tensor", "--builtin", "C2", "C2", "--trivial-actions"]));
    assert_eq!(r["schema"], 1);
    assert_eq!(r["orders"]["tensor"], 2);
    let r = json(&tensorial(&["tensor", "--builtin", "C2", "C3", "--trivial-actions"]));
    assert_eq!(r["orders"]["tensor"], 1);
    assert_eq!(r["trivial_baseline"]["agrees"], true);
}

#[test]
fn nu_orders() {
    let r = json(&tensorial(&["nu", "--builtin", "C4"]));
    assert_eq!(r["orders"]["nu"], 64);
    let r = json(&tensorial(&["nu", "--builtin", "C2"]));
    assert_eq!(r["orders"]["nu"], 8);
    assert_eq!(r["orders"]["mu"], 2);
    let r = json(&tensorial(&["nu", "--builtin", "S3"]));
    let o = &r["orders"];
    let t = o["tensor_square"].as_u64().unwrap();
    assert_eq!(o["nu"].as_u64().unwrap(), t * 36);
    assert_eq!(t, o["mu"].as_u64().unwrap() * 3);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&tensorial(&["nu", "--builtin", "C3"]));
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&tensorial(&["nu", "--builtin", "C3", "--timing"]));
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn group_and_pair_files() {
    let group = temp_file("s3.txt", "<a, b | a^3, b^2, (ab)^2>\n");
    let r = json(&tensorial(&["abelian", "invariants", "--group", &group]));
    assert_eq!(r["order"], 6);
    assert_eq!(r["abelianization"], serde_json::json!([2]));

    let group = temp_file("q8.json", r#"{"schema": 1, "group": {"builtin": "Q8"}}"#);
    let r = json(&tensorial(&["nu", "--group", &group]));
    assert_eq!(r["orders"]["group"], 8);

    let pair = temp_file(
        "pair.json",
        r#"{"schema": 1, "g": "C4", "h": {"permutations": [[1, 0]]}, "action_on_g": "trivial", "action_on_h": "trivial"}"#,
    );
    let r = json(&tensorial(&["tensor", "--pair", &pair]));
    assert_eq!(r["orders"]["tensor"], 2);
}

#[test]
fn exit_codes() {
    // parse errors: 2
    let bad = temp_file("bad.json", "{\"schema\": 1,\n \"g\": ");
    let out = tensorial(&["tensor", "--pair", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column"));
    let wrong = temp_file("schema2.json", r#"{"schema": 2}"#);
    assert_eq!(code(&tensorial(&["tensor", "--pair", &wrong])), 2);
    assert_eq!(code(&tensorial(&["nu", "--builtin", "X7"])), 2);
    let bad_presentation = temp_file("bad.txt", "<a | a^>");
    assert_eq!(code(&tensorial(&["nu", "--group", &bad_presentation])), 2);

    // invalid actions: 3
    assert_eq!(code(&tensorial(&["tensor", "--builtin", "C2", "C3", "--conjugation"])), 3);
    let not_hom = temp_file(
        "not_hom.json",
        r#"{"schema": 1, "g": "C3", "h": "C2", "action_on_g": [[0, 1, 2], [0, 1, 1]], "action_on_h": "trivial"}"#,
    );
    assert_eq!(code(&tensorial(&["tensor", "--pair", &not_hom])), 3);

    // incompatible: 4
    let out = tensorial(&["compat", "--incompatible-example"]);
    assert_eq!(code(&out), 4);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["compatible"], false);
    assert!(r["failures"][0]["x"].is_u64());
    assert_eq!(code(&tensorial(&["tensor", "--incompatible-example"])), 4);

    // capacity: 5
    assert_eq!(code(&tensorial(&["nu", "--builtin", "S3", "--max-cosets", "10"])), 5);
    let out = Command::new(env!("CARGO_BIN_EXE_tensorial"))
        .args(["nu", "--builtin", "S3"])
        .env("ETA_MAX_COSETS", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 5);
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_filter_and_capacity() {
    let out = tensorial(&["verify", "--filter", "commutator-identities", "--filter", "compat-reject"]);
    assert!(out.status.success());
    let reports = lines(&out);
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["claim"] == "commutator-identities" || r["claim"] == "compat-reject"));
    assert!(reports.iter().all(|r| r["verdict"] == "PASS"));

    let out = tensorial(&["verify", "--max-cosets", "10", "--filter", "decomposition"]);
    assert!(out.status.success());
    let reports = lines(&out);
    let skipped: Vec<&Value> = reports.iter().filter(|r| r["verdict"] == "SKIPPED").collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|r| r["details"]["cosets_defined"].is_u64()));
    assert!(reports.iter().all(|r| r["verdict"] != "FAIL"));

    assert_eq!(code(&tensorial(&["verify", "--filter", "no-such-claim"])), 2);
}

#[test]
fn verify_user_corpus() {
    let empty = temp_file("empty_corpus.json", r#"{"schema": 1}"#);
    let out = tensorial(&["verify", "--corpus", &empty]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let corpus = temp_file(
        "corpus.json",
        r#"{"schema": 1,
            "groups": [{"name": "mine", "group": {"presentation": "<a | a^5>"}}],
            "pairs": [{"name": "p", "g": "C2", "h": "C4", "action_on_g": "trivial", "action_on_h": "trivial"}]}"#,
    );
    let out = tensorial(&["verify", "--corpus", &corpus]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = lines(&out);
    assert!(reports.iter().any(|r| r["instance"].as_str().unwrap().contains("mine")));
    assert!(reports.iter().all(|r| r["verdict"] == "PASS"));
}

#[test]
fn abelian_utilities() {
    let r = json(&tensorial(&["abelian", "tensor", "[2,4]", "[4]"]));
    assert_eq!(r["tensor"], serde_json::json!([2, 4]));
    let r = json(&tensorial(&["abelian", "delta", "[2,2,2,2]"]));
    assert_eq!(r["order"], 1024);
    assert_eq!(code(&tensorial(&["abelian", "tensor", "[0]", "[2]"])), 2);
    assert_eq!(code(&tensorial(&["abelian", "snf", "[[1,2],[3]]"])), 2);
}
