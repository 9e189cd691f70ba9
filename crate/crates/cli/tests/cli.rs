use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hv")).args(args).output().expect("hv runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn spec(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name).to_string_lossy().into_owned()
}

fn write_spec(dir: &tempfile::TempDir, name: &str, doc: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(doc).unwrap()).unwrap();
    p
}

#[test]
fn bracket_output() {
    let out = hv(&["bracket", "--algebra", "mirror", "--x", "d:1", "--y", "h:-1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"result": [["h:1/2", "1/2"]]}));
    let tw = hv(&["bracket", "--algebra", "twisted", "--x", "d:1", "--y", "h:-1"]);
    assert_eq!(stdout_json(&tw), json!({"result": [["h:0", "1"], ["c2", "2"]]}));
}

#[test]
fn invalid_input_exits_with_two() {
    let out = hv(&["bracket", "--algebra", "mirror", "--x", "d:1", "--y", "h:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_json(&out)["error"].as_str().unwrap().contains("h:1"));
    let missing = hv(&["module", "build", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn failing_check_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({
        "algebra": "twisted",
        "construction": {"type": "sugawara", "base": {"type": "fock", "mu": "2"}, "z": "1/3"},
        "params": {"level": "1"},
        "truncation": 4
    });
    let p = write_spec(&dir, "tw.json", &doc);
    let p = p.to_str().unwrap();
    let good = hv(&["verify", "sugawara", "--spec", p, "--range", "2"]);
    assert_eq!(good.status.code(), Some(0));
    assert_eq!(stdout_json(&good)["pass"], json!(true));
    // the shifted operators only commute with h when the same z is used on both sides
    let bad = hv(&["verify", "sugawara", "--spec", p, "--range", "2", "--z", "0"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = stdout_json(&bad);
    assert_eq!(v["pass"], json!(false));
    assert!(v["counterexample"]["identity"].is_string());
}

#[test]
fn output_is_deterministic() {
    let args = ["probe", "lemma", "--spec", &spec("semi_whittaker_base.json"), "--which", "mixed", "--samples", "10", "--seed", "5"];
    let a = hv(&args);
    let b = hv(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn build_then_act_round_trip() {
    let built = hv(&["module", "build", "--spec", &spec("fock.json")]);
    assert_eq!(built.status.code(), Some(0));
    let doc = stdout_json(&built);
    let basis = doc["basis"].as_array().unwrap();
    assert_eq!(doc["dimension"].as_u64().unwrap() as usize, basis.len());
    // h_{1/2} h_{-1/2} on h_{-1/2}|0> is (1/2 + 1/2) h_{-1/2}|0>
    let dir = tempfile::tempdir().unwrap();
    let vector = json!({"terms": [{"basis": basis[1], "coeff": "1"}]});
    let vp = write_spec(&dir, "v.json", &vector);
    let at = format!("@{}", vp.to_str().unwrap());
    let acted = hv(&["module", "act", "--spec", &spec("fock.json"), "--word", "h:1/2,h:-1/2", "--vector", &at]);
    assert_eq!(acted.status.code(), Some(0));
    assert_eq!(stdout_json(&acted)["result"], vector);
    let inline = hv(&["module", "act", "--spec", &spec("fock.json"), "--word", "h:1/2,h:-1/2", "--basis-index", "1"]);
    assert_eq!(inline.stdout, acted.stdout);
}

#[test]
fn truncation_violation_is_reported() {
    let out = hv(&["module", "act", "--spec", &spec("fock_dressed.json"), "--word", "h:-13/2", "--basis-index", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_json(&out)["error"].as_str().unwrap().contains("bound exceeded"));
    let lazy = hv(&["module", "act", "--spec", &spec("fock_dressed.json"), "--word", "h:-13/2", "--basis-index", "0", "--lazy"]);
    assert_eq!(lazy.status.code(), Some(0));
}

#[test]
fn semi_whittaker_invariant() {
    let out = hv(&["module", "invariants", "--spec", &spec("semi_whittaker.json"), "--which", "n_S"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], json!(2));
    assert_eq!(v["name"], json!("n_S"));
}

#[test]
fn dressed_fock_shifted_invariant_is_unbounded() {
    let out = hv(&["module", "invariants", "--spec", &spec("fock_dressed.json"), "--which", "r_S"]);
    assert_eq!(stdout_json(&out)["value"], json!("−∞"));
}

#[test]
fn normalize_reorders_words() {
    let out = hv(&["normalize", "--algebra", "mirror", "--word", "h:1/2,h:-1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("h:-1/2"));
    assert!(text.contains("\"1/2\""));
}

#[test]
fn dump_matrix_shape() {
    let out = hv(&["module", "dump-matrix", "--spec", &spec("fock.json"), "--op", "L:0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["rows"], v["cols"]);
    assert_eq!(v["row_basis"].as_array().unwrap().len() as u64, v["rows"].as_u64().unwrap());
}

#[test]
fn probes_run() {
    let inj = hv(&["probe", "injective", "--spec", &spec("fock.json"), "--op", "h:1/2"]);
    assert_eq!(stdout_json(&inj)["injective_on_scanned_slices"], json!(false));
    let nil = hv(&["probe", "nilpotent", "--spec", &spec("verma.json"), "--gen", "d:1", "--basis-index", "0"]);
    assert_eq!(stdout_json(&nil)["power"], json!(1));
    let ann = hv(&["probe", "annihilator", "--spec", &spec("fock.json"), "--filter", "heis:0"]);
    assert_eq!(ann.status.code(), Some(0));
    let lemma = hv(&["probe", "lemma", "--spec", &spec("fock.json"), "--which", "h-lower", "--seed", "1"]);
    assert_eq!(lemma.status.code(), Some(2));
}

#[test]
fn laurent_induced_invariants() {
    let value = |which: &str| {
        let out = hv(&["module", "invariants", "--spec", &spec("laurent_induced.json"), "--which", which]);
        assert_eq!(out.status.code(), Some(0));
        stdout_json(&out)["value"].clone()
    };
    assert_eq!(value("n_S"), json!(1));
    // d_1, d_2, ... kill the Laurent base itself, so U(1) is already nonzero
    assert_eq!(value("m_S"), json!(1));
    assert_eq!(value("r_S"), json!(2));
}
