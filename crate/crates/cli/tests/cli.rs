use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/inputs").join(name)
}

fn osculate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osculate"))
        .args(args)
        .env_remove("OSCULATE_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = osculate(&all);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, code)
}

fn values(v: &Value, op: &str) -> Vec<String> {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["operation"] == op)
        .map(|r| r["value"].as_str().unwrap().to_string())
        .collect()
}

fn path(name: &str) -> String {
    input(name).to_string_lossy().into_owned()
}

#[test]
fn twisted_cubic_has_no_flexes() {
    let (v, code) = json(&["curve", "flexes", "--k", "2", &path("twisted_cubic.json")]);
    assert_eq!(code, 0);
    assert_eq!(values(&v, "flexes k=2"), ["empty"]);
}

#[test]
fn flexed_quartic_has_two_flexes() {
    let (v, code) = json(&["curve", "flexes", "--k", "2", &path("flexed_quartic.json")]);
    assert_eq!(code, 0);
    assert_eq!(values(&v, "flexes k=2"), ["2 point(s): t=0, inf"]);
}

#[test]
fn cusp_fails_the_embedding_check() {
    let (v, code) = json(&["curve", "analyze", &path("cusp.json")]);
    assert_eq!(code, 2);
    let emb: Vec<&Value> =
        v["records"].as_array().unwrap().iter().filter(|r| r["operation"] == "embedding").collect();
    assert_eq!(emb[0]["status"], "fail");
    // a curve that must embed is an error for the other commands
    assert_eq!(osculate(&["curve", "flexes", &path("cusp.json")]).status.code(), Some(2));
}

#[test]
fn analyze_reports_generic_dims() {
    let (v, code) = json(&["curve", "analyze", &path("twisted_cubic.json")]);
    assert_eq!(code, 0);
    for k in 1..=3 {
        assert_eq!(values(&v, &format!("generic osc dim k={k}")), [k.to_string()]);
    }
}

#[test]
fn curve_osc_at_a_flex() {
    let (v, _) = json(&["curve", "osc", "--k", "2", "--t", "0", &path("flexed_quartic.json")]);
    assert_eq!(values(&v, "osc dim k=2"), ["1"]);
    let (v, _) = json(&["curve", "osc", "--k", "2", "--t", "t=-1/2", &path("flexed_quartic.json")]);
    assert_eq!(values(&v, "osc dim k=2"), ["2"]);
}

#[test]
fn projection_writes_a_curve_record() {
    let dir = std::env::temp_dir().join(format!("osculate-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("projected.json");
    let (v, code) = json(&[
        "curve",
        "project",
        &path("rational_quartic.json"),
        "--center",
        &path("center_point.json"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{v}");
    let (a, code) = json(&["curve", "analyze", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(values(&a, "degree"), ["4"]);
    assert_eq!(values(&a, "ambient dimension"), ["3"]);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cubic_scroll_flexes_and_discriminant() {
    let (v, code) = json(&["scroll", "flexes", &path("cubic_scroll.json")]);
    assert_eq!(code, 0);
    assert_eq!(values(&v, "flex component"), ["segre subscroll S={1}"]);
    let (v, code) = json(&["scroll", "discr", &path("cubic_scroll.json")]);
    assert_eq!(code, 0);
    assert_eq!(values(&v, "dimension"), ["1"]);
    assert_eq!(values(&v, "degree"), ["2"]);
    assert_eq!(values(&v, "rational normal scroll"), ["true"]);
}

#[test]
fn scroll_osc_along_the_directrix() {
    let (v, code) = json(&["scroll", "osc", "--k", "2", "--point", "t=0;1,0", &path("cubic_scroll.json")]);
    assert_eq!(code, 0);
    assert_eq!(values(&v, "osc dim k=2"), ["3"]);
    assert_eq!(values(&v, "flex (below generic)"), ["true"]);
    let out = osculate(&["scroll", "osc", "--k", "2", "--point", "t=0;1", &path("cubic_scroll.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes_on_conic_and_flexed_quartic() {
    let (v, code) = json(&["scroll", "verify", &path("conic_and_flexed_quartic.json")]);
    assert_eq!(code, 0);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["status"] != "fail"));
}

#[test]
fn scenarios_from_the_command_line() {
    let (v, code) = json(&["examples", "run", "ex3.1", "--r1", "2", "--r2", "3"]);
    assert_eq!(code, 0);
    assert!(v["command"].as_str().unwrap().contains("r1=2 r2=3"));
    let (_, code) = json(&["examples", "run", "ex3.2", "--k", "2", "--r", "3"]);
    assert_eq!(code, 0);
    let (v, code) = json(&["examples", "all", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 7);
    assert!(v["records"].as_array().unwrap().len() > 40);
}

#[test]
fn seed_from_environment_and_trailing_flags() {
    let env = Command::new(env!("CARGO_BIN_EXE_osculate"))
        .args(["--format", "json", "examples", "run", "ex3.5-on"])
        .env("OSCULATE_SEED", "11")
        .output()
        .unwrap();
    let (flag, _) = json(&["examples", "run", "ex3.5-on", "--seed", "11"]);
    let env: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(env, flag);
    assert_eq!(flag["seed"], 11);
}

#[test]
fn json_is_byte_identical() {
    let args = ["--format", "json", "--seed", "3", "scroll", "verify", &path("cubic_scroll.json")];
    let a = osculate(&args);
    let b = osculate(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "json", "examples", "run", "ex3.6-on", "--seed", "5"];
    assert_eq!(osculate(&args).stdout, osculate(&args).stdout);
}

#[test]
fn input_errors_exit_with_one() {
    assert_eq!(osculate(&["examples", "run", "nope"]).status.code(), Some(1));
    assert_eq!(osculate(&["examples", "run", "ex3.1", "--zz", "1"]).status.code(), Some(1));
    assert_eq!(osculate(&["curve", "flexes", "/does/not/exist.json"]).status.code(), Some(1));
    assert_eq!(osculate(&["--budget", "0", "examples", "all"]).status.code(), Some(1));
    assert_eq!(osculate(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn malformed_records_name_the_field() {
    let dir = std::env::temp_dir().join(format!("osculate-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"ambient_dim": 1, "form_degree": 1, "coefficients": [["1", "0"], ["0", "0.5"]]}"#,
    )
    .unwrap();
    let out = osculate(&["curve", "analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coefficients[1]"));
    std::fs::write(&bad, "{\n  \"ambient_dim\": 1,\n  \"form_degree\": \"one\"\n}").unwrap();
    let out = osculate(&["curve", "analyze", bad.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn tsv_has_a_header_and_five_columns() {
    let out = osculate(&["--format", "tsv", "scroll", "flexes", &path("cubic_scroll.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "subject\toperation\tvalue\tprovenance_or_check\tstatus");
    assert!(lines[1..].iter().all(|l| l.split('\t').count() == 5));
}
